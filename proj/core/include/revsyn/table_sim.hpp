#pragma once

#include <cstdint>
#include <vector>

#include "revsyn/circuit.hpp"
#include "revsyn/truth_table.hpp"

namespace revsyn {

/// Truth tables of a target function's output bits, one 2^n-bit vector
/// per output line, packed into 64-bit words. Bit x of bit[j] is output
/// bit j (line l-m+1+j) of f(x).
struct OutputTables {
  int n = 0;
  int m = 0;
  std::size_t words = 0;
  std::uint64_t last_word_mask = ~std::uint64_t(0);
  std::vector<std::vector<std::uint64_t>> bit;

  explicit OutputTables(const BooleanFunction& f);
};

/// Evaluates a circuit on all 2^n embedded inputs at once by carrying one
/// truth-table word vector per line. A gate costs O(2^n / 64) word ops,
/// which makes exhaustive evaluation as cheap as a handful of single-input
/// runs.
class TableSim {
 public:
  TableSim(int n, int line_count);

  /// Computes the disagreement mask of `circuit` against the target:
  /// bit x of the result is set iff any output bit differs on input x.
  /// The result stays valid until the next call.
  const std::vector<std::uint64_t>& diff(const Circuit& circuit,
                                         const OutputTables& target);

  /// Exact number of disagreeing inputs.
  std::uint64_t diff_count(const Circuit& circuit, const OutputTables& target);

  static bool test_bit(const std::vector<std::uint64_t>& mask, std::uint32_t x) {
    return (mask[x >> 6] >> (x & 63u)) & 1u;
  }

 private:
  void load_inputs();
  std::uint64_t* line(int i) { return lines_.data() + std::size_t(i - 1) * words_; }

  int n_;
  int line_count_;
  std::size_t words_;
  std::uint64_t last_word_mask_;
  std::vector<std::uint64_t> lines_;  // [line][word], line-major
  std::vector<std::uint64_t> diff_;
};

}  // namespace revsyn
