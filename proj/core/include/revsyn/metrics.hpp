#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revsyn/circuit.hpp"
#include "revsyn/truth_table.hpp"

namespace revsyn {

/// Exact non-negative fraction; counts are the authoritative form of
/// every exhaustive statistic.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

/// Exhaustive error statistics of a circuit (or function) against a
/// target. Single-output reports carry the confusion matrix and the
/// class-conditional rates; a rate over an empty class is left undefined
/// rather than reported as 0.
struct ErrorReport {
  int n = 0;
  int m = 0;
  std::uint64_t total = 0;     // 2^n
  std::uint64_t mismatch = 0;  // inputs with any wrong output bit

  std::optional<ConfusionCounts> confusion;  // single-output only
  Rational err;
  std::optional<Rational> fn_rate;
  std::optional<Rational> fp_rate;
  std::optional<Rational> f1;

  std::vector<std::uint64_t> per_bit_mismatch;  // [output bit j]

  std::string to_json() const;
};

ErrorReport report_from_counts(const ConfusionCounts& counts);

/// Evaluates the circuit on all 2^n embedded inputs and compares the last
/// m lines against f.
ErrorReport exhaustive_report(const Circuit& circuit, const BooleanFunction& f);

/// Disagreement between two same-shape functions (used to score a circuit
/// that has already been collapsed to a truth table).
ErrorReport exhaustive_report(const BooleanFunction& got, const BooleanFunction& want);

/// Mean weighted output-bit disagreement, normalized by the weight sum so
/// the result lies in [0,1]. Uniform weights recover the per-bit average;
/// weights 2^(m-1-j) recover the big-endian value-weighted metric.
double multi_output_error(const Circuit& circuit, const BooleanFunction& f,
                          const std::vector<double>& weights);

std::vector<double> uniform_weights(int m);

/// Weight 2^i on output bit of significance i; `big_endian_first_line`
/// keeps the oracles' convention (first output line most significant).
std::vector<double> exponential_weights(int m, bool big_endian_first_line = true);

/// METHOD-1 style mismatch count over a sampled input multiset
/// (input values, with multiplicity).
std::uint64_t sampled_mismatch_count(const Circuit& circuit, const BooleanFunction& f,
                                     const std::vector<std::uint32_t>& inputs);

}  // namespace revsyn
