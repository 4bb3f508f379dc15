#include "revsyn/metrics.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace revsyn {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

ErrorReport report_from_counts(const ConfusionCounts& counts) {
  ErrorReport r;
  r.m = 1;
  r.total = counts.total();
  r.mismatch = counts.fp + counts.fn;
  r.confusion = counts;
  r.err = Rational(static_cast<std::int64_t>(r.mismatch),
                   static_cast<std::int64_t>(r.total));
  const std::uint64_t positives = counts.tp + counts.fn;
  const std::uint64_t negatives = counts.tn + counts.fp;
  if (positives > 0)
    r.fn_rate = Rational(static_cast<std::int64_t>(counts.fn),
                         static_cast<std::int64_t>(positives));
  if (negatives > 0)
    r.fp_rate = Rational(static_cast<std::int64_t>(counts.fp),
                         static_cast<std::int64_t>(negatives));
  const std::uint64_t f1_den = 2 * counts.tp + counts.fp + counts.fn;
  if (f1_den > 0)
    r.f1 = Rational(static_cast<std::int64_t>(2 * counts.tp),
                    static_cast<std::int64_t>(f1_den));
  r.per_bit_mismatch = {r.mismatch};
  return r;
}

namespace {

ErrorReport report_from_tables(const std::vector<std::uint32_t>& got,
                               const std::vector<std::uint32_t>& want, int n, int m) {
  if (n > 24) throw std::invalid_argument("exhaustive evaluation limited to n <= 24");

  if (m == 1) {
    ConfusionCounts counts;
    for (std::size_t x = 0; x < want.size(); ++x) {
      if (want[x])
        (got[x] ? counts.tp : counts.fn)++;
      else
        (got[x] ? counts.fp : counts.tn)++;
    }
    ErrorReport r = report_from_counts(counts);
    r.n = n;
    return r;
  }

  ErrorReport r;
  r.n = n;
  r.m = m;
  r.total = want.size();
  r.per_bit_mismatch.assign(static_cast<std::size_t>(m), 0);
  for (std::size_t x = 0; x < want.size(); ++x) {
    const std::uint32_t d = got[x] ^ want[x];
    if (d) ++r.mismatch;
    for (int j = 0; j < m; ++j)
      if ((d >> (m - 1 - j)) & 1u) ++r.per_bit_mismatch[static_cast<std::size_t>(j)];
  }
  r.err = Rational(static_cast<std::int64_t>(r.mismatch),
                   static_cast<std::int64_t>(r.total));
  return r;
}

}  // namespace

ErrorReport exhaustive_report(const Circuit& circuit, const BooleanFunction& f) {
  validate_circuit(circuit);
  validate_function(f);
  if (circuit.line_count < f.n || circuit.line_count < f.m)
    throw std::invalid_argument("circuit has fewer lines than the target function");

  std::vector<std::uint32_t> got(f.table.size());
  for (std::uint32_t x = 0; x < got.size(); ++x) {
    const std::uint32_t out = run_mask(circuit, embed_value_mask(x, f.n));
    got[x] = read_output_value(out, circuit.line_count, f.m);
  }
  return report_from_tables(got, f.table, f.n, f.m);
}

ErrorReport exhaustive_report(const BooleanFunction& got, const BooleanFunction& want) {
  validate_function(got);
  validate_function(want);
  if (got.n != want.n || got.m != want.m)
    throw std::invalid_argument("function shapes differ");
  return report_from_tables(got.table, want.table, want.n, want.m);
}

std::vector<double> uniform_weights(int m) {
  return std::vector<double>(static_cast<std::size_t>(m), 1.0);
}

std::vector<double> exponential_weights(int m, bool big_endian_first_line) {
  std::vector<double> w(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const int significance = big_endian_first_line ? m - 1 - j : j;
    w[static_cast<std::size_t>(j)] = std::ldexp(1.0, significance);
  }
  return w;
}

double multi_output_error(const Circuit& circuit, const BooleanFunction& f,
                          const std::vector<double>& weights) {
  if (static_cast<int>(weights.size()) != f.m)
    throw std::invalid_argument("weight vector length must equal output count");
  double weight_sum = 0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("weights must be non-negative");
    weight_sum += w;
  }
  if (weight_sum <= 0) throw std::invalid_argument("weights must not all be zero");

  validate_circuit(circuit);
  double acc = 0;
  for (std::uint32_t x = 0; x < f.table.size(); ++x) {
    const std::uint32_t out = run_mask(circuit, embed_value_mask(x, f.n));
    const std::uint32_t d = read_output_value(out, circuit.line_count, f.m) ^ f.table[x];
    for (int j = 0; j < f.m; ++j)
      if ((d >> (f.m - 1 - j)) & 1u) acc += weights[static_cast<std::size_t>(j)];
  }
  return acc / (static_cast<double>(f.table.size()) * weight_sum);
}

std::uint64_t sampled_mismatch_count(const Circuit& circuit, const BooleanFunction& f,
                                     const std::vector<std::uint32_t>& inputs) {
  validate_circuit(circuit);
  std::uint64_t count = 0;
  for (std::uint32_t x : inputs) {
    const std::uint32_t out = run_mask(circuit, embed_value_mask(x, f.n));
    if (read_output_value(out, circuit.line_count, f.m) != f.table[x]) ++count;
  }
  return count;
}

std::string ErrorReport::to_json() const {
  nlohmann::json j;
  j["inputs"] = n;
  j["outputs"] = m;
  j["total_inputs"] = total;
  j["mismatch_count"] = mismatch;
  j["err"] = err.value();
  j["err_num"] = err.num;
  j["err_den"] = err.den;
  if (confusion) {
    j["tp"] = confusion->tp;
    j["fp"] = confusion->fp;
    j["fn"] = confusion->fn;
    j["tn"] = confusion->tn;
  }
  if (fn_rate) j["fn_rate"] = fn_rate->value(); else j["fn_rate"] = "undefined";
  if (fp_rate) j["fp_rate"] = fp_rate->value(); else j["fp_rate"] = "undefined";
  if (f1) j["f1"] = f1->value();
  j["per_bit_mismatch"] = per_bit_mismatch;
  return j.dump(2);
}

}  // namespace revsyn
