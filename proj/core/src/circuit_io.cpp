#include "revsyn/circuit_io.hpp"

#include <fstream>
#include <sstream>

namespace revsyn {

namespace {

// Strips the comment tail and surrounding whitespace.
std::string clean_line(const std::string& raw) {
  std::string s = raw;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_index(const std::string& tok, int lineno) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 1 || v > 255)
      throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception&) {
    throw ParseError(lineno, "expected a line index in 1..255, got '" + tok + "'");
  }
}

}  // namespace

std::string serialize(const Circuit& circuit) {
  validate_circuit(circuit);
  std::ostringstream out;
  out << "lines " << circuit.line_count << "\n";
  for (const Gate& g : circuit.gates) {
    out << gate_kind_name(g.kind) << ' ' << int(g.args[0]) << ' '
        << int(g.args[1]) << ' ' << int(g.args[2]) << "\n";
  }
  return out.str();
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  Circuit circuit;
  bool have_header = false;

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = clean_line(raw);
    if (line.empty()) continue;

    std::istringstream toks(line);
    std::string head;
    toks >> head;

    if (!have_header) {
      if (head != "lines")
        throw ParseError(lineno, "expected header 'lines <l>'");
      std::string count;
      if (!(toks >> count)) throw ParseError(lineno, "missing line count");
      circuit.line_count = parse_index(count, lineno);
      if (circuit.line_count > 32)
        throw ParseError(lineno, "line count must be in 1..32");
      std::string extra;
      if (toks >> extra) throw ParseError(lineno, "trailing tokens after header");
      have_header = true;
      continue;
    }

    Gate g;
    if (!gate_kind_from_name(head, g.kind))
      throw ParseError(lineno, "unknown gate kind '" + head + "'");
    for (int i = 0; i < 3; ++i) {
      std::string tok;
      if (!(toks >> tok)) throw ParseError(lineno, "gate needs 3 line indices");
      g.args[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(parse_index(tok, lineno));
    }
    std::string extra;
    if (toks >> extra) throw ParseError(lineno, "trailing tokens after gate");
    try {
      validate_gate(g, circuit.line_count);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    circuit.gates.push_back(g);
  }

  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "empty document");
  return circuit;
}

Circuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

void save_circuit_file(const Circuit& circuit, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write circuit file: " + path);
  out << serialize(circuit);
}

std::string export_real(const Circuit& circuit) {
  validate_circuit(circuit);
  std::ostringstream out;
  out << ".version 2.0\n";
  out << ".numvars " << circuit.line_count << "\n";
  out << ".variables";
  for (int i = 1; i <= circuit.line_count; ++i) out << " x" << i;
  out << "\n.begin\n";
  for (const Gate& g : circuit.gates) {
    const int a = g.args[0], b = g.args[1], c = g.args[2];
    switch (g.kind) {
      case GateKind::Identity:
        break;
      case GateKind::Not:
        out << "t1 x" << a << "\n";
        break;
      case GateKind::Cnot:
        out << "t2 x" << a << " x" << b << "\n";
        break;
      case GateKind::Swap:
        out << "t2 x" << a << " x" << b << "\n";
        out << "t2 x" << b << " x" << a << "\n";
        out << "t2 x" << a << " x" << b << "\n";
        break;
      case GateKind::Toffoli:
        out << "t3 x" << a << " x" << b << " x" << c << "\n";
        break;
      case GateKind::Fredkin:
        out << "f3 x" << a << " x" << b << " x" << c << "\n";
        break;
    }
  }
  out << ".end\n";
  return out.str();
}

namespace {

int real_var_index(const std::string& tok, int lineno, int numvars) {
  if (tok.size() < 2 || tok[0] != 'x')
    throw ParseError(lineno, "expected variable 'x<i>', got '" + tok + "'");
  const int v = parse_index(tok.substr(1), lineno);
  if (v > numvars) throw ParseError(lineno, "variable index exceeds .numvars");
  return v;
}

// Fills the unused argument slots with distinct indices.
Gate make_gate(GateKind kind, int a, int b, int c) {
  Gate g;
  g.kind = kind;
  int used[3] = {a, b, c};
  int next = 1;
  for (int i = arity(kind); i < 3; ++i) {
    while (next == used[0] || next == used[1] || next == used[2]) ++next;
    used[i] = next++;
  }
  g.args = {static_cast<std::uint8_t>(used[0]), static_cast<std::uint8_t>(used[1]),
            static_cast<std::uint8_t>(used[2])};
  return g;
}

}  // namespace

Circuit import_real(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  Circuit circuit;
  bool in_body = false;
  bool have_numvars = false;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = clean_line(raw);
    if (auto pos = line.find("--"); pos != std::string::npos)
      line = clean_line(line.substr(0, pos));
    if (line.empty()) continue;

    std::istringstream toks(line);
    std::string head;
    toks >> head;

    if (!in_body) {
      if (head == ".numvars") {
        int count = 0;
        if (!(toks >> count) || count < 1 || count > 32)
          throw ParseError(lineno, "bad .numvars");
        circuit.line_count = count;
        have_numvars = true;
      } else if (head == ".begin") {
        if (!have_numvars) throw ParseError(lineno, ".begin before .numvars");
        in_body = true;
      }
      // Other dot-directives (.version, .variables, ...) are ignored.
      continue;
    }

    if (head == ".end") break;

    int args[3] = {0, 0, 0};
    GateKind kind;
    int count;
    if (head == "t1") { kind = GateKind::Not; count = 1; }
    else if (head == "t2") { kind = GateKind::Cnot; count = 2; }
    else if (head == "t3") { kind = GateKind::Toffoli; count = 3; }
    else if (head == "f3") { kind = GateKind::Fredkin; count = 3; }
    else throw ParseError(lineno, "unsupported gate code '" + head + "'");

    for (int i = 0; i < count; ++i) {
      std::string tok;
      if (!(toks >> tok)) throw ParseError(lineno, "missing gate argument");
      args[i] = real_var_index(tok, lineno, circuit.line_count);
    }
    // t2/t3 list controls first, target last; same order as our convention.
    Gate g = make_gate(kind, args[0], args[1], args[2]);
    try {
      validate_gate(g, circuit.line_count);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    circuit.gates.push_back(g);
  }

  if (!have_numvars) throw ParseError(lineno == 0 ? 1 : lineno, "missing .numvars");
  return circuit;
}

}  // namespace revsyn
