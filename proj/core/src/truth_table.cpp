#include "revsyn/truth_table.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "revsyn/circuit.hpp"

namespace revsyn {

std::vector<bool> BooleanFunction::eval(const std::vector<bool>& x) const {
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("input width mismatch");
  std::uint32_t v = 0;
  for (int i = 0; i < n; ++i)
    if (x[static_cast<std::size_t>(i)]) v |= 1u << (n - 1 - i);
  const std::uint32_t y = table[v];
  std::vector<bool> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    out[static_cast<std::size_t>(j)] = (y >> (m - 1 - j)) & 1u;
  return out;
}

std::uint64_t BooleanFunction::positive_count() const {
  std::uint64_t count = 0;
  for (std::uint32_t y : table) count += y & 1u;
  return count;
}

bool BooleanFunction::is_constant() const {
  for (std::uint32_t y : table)
    if (y != table[0]) return false;
  return true;
}

void validate_function(const BooleanFunction& f) {
  if (f.n < 1 || f.n > 24) throw std::invalid_argument("input count must be in 1..24");
  if (f.m < 1 || f.m > 24) throw std::invalid_argument("output count must be in 1..24");
  if (f.table.size() != (std::size_t(1) << f.n))
    throw std::invalid_argument("table must have 2^n rows");
  for (std::uint32_t y : f.table)
    if (f.m < 32 && y >> f.m)
      throw std::invalid_argument("table entry exceeds output width");
}

namespace {

BooleanFunction make_single_output(const std::string& name, int n,
                                   bool (*pred)(std::uint32_t, int)) {
  BooleanFunction f;
  f.name = name;
  f.n = n;
  f.m = 1;
  f.table.resize(std::size_t(1) << n);
  for (std::uint32_t x = 0; x < f.table.size(); ++x)
    f.table[x] = pred(x, n) ? 1u : 0u;
  return f;
}

constexpr std::uint32_t kPrimes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                       23, 29, 31, 37, 41, 43, 47, 53};

BooleanFunction make_nth_prime(const std::string& name, int n, int m) {
  BooleanFunction f;
  f.name = name;
  f.n = n;
  f.m = m;
  f.table.resize(std::size_t(1) << n);
  for (std::uint32_t x = 0; x < f.table.size(); ++x) f.table[x] = kPrimes[x];
  return f;
}

}  // namespace

BooleanFunction builtin(const std::string& name) {
  if (name == "xor5")
    return make_single_output(name, 5, [](std::uint32_t x, int) {
      return (std::popcount(x) & 1) == 1;
    });
  if (name == "2of5")
    return make_single_output(name, 5, [](std::uint32_t x, int) {
      return std::popcount(x) == 2;
    });
  if (name == "6sym")
    return make_single_output(name, 6, [](std::uint32_t x, int) {
      const int p = std::popcount(x);
      return p >= 2 && p <= 4;
    });
  if (name == "9sym")
    return make_single_output(name, 9, [](std::uint32_t x, int) {
      const int p = std::popcount(x);
      return p >= 3 && p <= 6;
    });
  if (name == "4mod5")
    return make_single_output(name, 4, [](std::uint32_t x, int) {
      return x % 5 == 0;
    });
  if (name == "5mod5")
    return make_single_output(name, 5, [](std::uint32_t x, int) {
      return x % 5 == 0;
    });
  if (name == "NthPrime3") return make_nth_prime(name, 3, 5);
  if (name == "NthPrime4") return make_nth_prime(name, 4, 6);
  std::string known;
  for (const std::string& k : builtin_names()) {
    if (!known.empty()) known += ", ";
    known += k;
  }
  throw std::invalid_argument("unknown built-in function '" + name +
                              "' (built-ins: " + known + ")");
}

std::vector<std::string> builtin_names() {
  return {"6sym", "9sym", "2of5", "4mod5", "5mod5", "xor5", "NthPrime3", "NthPrime4"};
}

namespace {

std::string strip(const std::string& raw) {
  std::string s = raw;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint32_t bits_value(const std::string& tok, int width, int lineno) {
  if (static_cast<int>(tok.size()) != width)
    throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(width) + " bits, got '" + tok + "'");
  std::uint32_t v = 0;
  for (char c : tok) {
    if (c != '0' && c != '1')
      throw std::runtime_error("line " + std::to_string(lineno) + ": bad bit '" +
                               std::string(1, c) + "'");
    v = (v << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return v;
}

}  // namespace

BooleanFunction load_truth_table(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  BooleanFunction f;
  f.name = "table";
  bool have_n = false, have_m = false;
  std::vector<bool> seen;

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream toks(line);
    std::string head;
    toks >> head;

    if (head == "inputs" || head == "outputs") {
      int v = 0;
      if (!(toks >> v) || v < 1 || v > 24)
        throw std::runtime_error("line " + std::to_string(lineno) + ": bad " + head);
      (head == "inputs" ? f.n : f.m) = v;
      (head == "inputs" ? have_n : have_m) = true;
      continue;
    }
    if (!have_n || !have_m)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": rows before 'inputs'/'outputs' header");
    if (seen.empty()) {
      seen.assign(std::size_t(1) << f.n, false);
      f.table.assign(std::size_t(1) << f.n, 0);
    }
    std::string ytok;
    if (!(toks >> ytok))
      throw std::runtime_error("line " + std::to_string(lineno) + ": missing output bits");
    const std::uint32_t x = bits_value(head, f.n, lineno);
    const std::uint32_t y = bits_value(ytok, f.m, lineno);
    if (seen[x])
      throw std::runtime_error("line " + std::to_string(lineno) + ": duplicate row");
    seen[x] = true;
    f.table[x] = y;
  }

  if (!have_n || !have_m) throw std::runtime_error("missing 'inputs'/'outputs' header");
  std::size_t filled = 0;
  for (bool b : seen) filled += b;
  if (filled != (std::size_t(1) << f.n))
    throw std::runtime_error("incomplete table: " + std::to_string(filled) + " of " +
                             std::to_string(std::size_t(1) << f.n) + " rows");
  return f;
}

std::string dump_truth_table(const BooleanFunction& f) {
  validate_function(f);
  std::ostringstream out;
  out << "inputs " << f.n << "\noutputs " << f.m << "\n";
  for (std::uint32_t x = 0; x < f.table.size(); ++x) {
    for (int i = f.n - 1; i >= 0; --i) out << ((x >> i) & 1u);
    out << ' ';
    for (int j = f.m - 1; j >= 0; --j) out << ((f.table[x] >> j) & 1u);
    out << '\n';
  }
  return out.str();
}

BooleanFunction load_truth_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open truth-table file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  BooleanFunction f = load_truth_table(buf.str());
  f.name = path;
  return f;
}

BooleanFunction circuit_function(const Circuit& circuit, int n, int m) {
  validate_circuit(circuit);
  if (n > circuit.line_count || m > circuit.line_count)
    throw std::invalid_argument("function wider than circuit");
  BooleanFunction f;
  f.name = "circuit";
  f.n = n;
  f.m = m;
  f.table.resize(std::size_t(1) << n);
  for (std::uint32_t x = 0; x < f.table.size(); ++x) {
    const std::uint32_t out = run_mask(circuit, embed_value_mask(x, n));
    f.table[x] = read_output_value(out, circuit.line_count, m);
  }
  return f;
}

}  // namespace revsyn
