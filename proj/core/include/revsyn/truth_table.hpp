#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace revsyn {

/// Materialized n-input m-output Boolean function. Input and output bit
/// strings are read big-endian: the first line carries the most
/// significant bit, so `table[v]` is the output value for input value v.
struct BooleanFunction {
  std::string name;
  int n = 0;
  int m = 0;
  std::vector<std::uint32_t> table;  // size 2^n, entries < 2^m

  std::uint32_t eval_value(std::uint32_t x) const { return table[x]; }
  std::vector<bool> eval(const std::vector<bool>& x) const;

  std::uint64_t input_count() const { return std::uint64_t(1) << n; }

  /// Number of inputs mapped to 1 (single-output functions only).
  std::uint64_t positive_count() const;

  bool is_constant() const;
};

void validate_function(const BooleanFunction& f);

/// The eight built-in benchmark functions: 6sym, 9sym, 2of5, 4mod5,
/// 5mod5, xor5, NthPrime3, NthPrime4.
BooleanFunction builtin(const std::string& name);
std::vector<std::string> builtin_names();

/// Truth-table document: header `inputs <n>` / `outputs <m>`, then all
/// 2^n rows `<x-bits> <y-bits>`; `#` starts a comment.
BooleanFunction load_truth_table(const std::string& text);
std::string dump_truth_table(const BooleanFunction& f);
BooleanFunction load_truth_table_file(const std::string& path);

/// Truth table of the function a circuit computes on its last m lines.
BooleanFunction circuit_function(const struct Circuit& circuit, int n, int m);

}  // namespace revsyn
