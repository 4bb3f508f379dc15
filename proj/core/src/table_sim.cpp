#include "revsyn/table_sim.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace revsyn {

namespace {

constexpr std::uint64_t kProjection[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::size_t word_count(int n) { return (std::size_t(1) << n) <= 64 ? 1 : (std::size_t(1) << n) / 64; }

std::uint64_t tail_mask(int n) {
  return n >= 6 ? ~std::uint64_t(0) : (std::uint64_t(1) << (std::size_t(1) << n)) - 1;
}

// Truth-table word of input variable v (bit v of the input value).
std::uint64_t projection_word(int v, std::size_t w) {
  if (v < 6) return kProjection[v];
  return (w >> (v - 6)) & 1u ? ~std::uint64_t(0) : 0;
}

}  // namespace

OutputTables::OutputTables(const BooleanFunction& f)
    : n(f.n), m(f.m), words(word_count(f.n)), last_word_mask(tail_mask(f.n)) {
  bit.assign(std::size_t(m), std::vector<std::uint64_t>(words, 0));
  for (std::uint32_t x = 0; x < f.table.size(); ++x) {
    const std::uint32_t y = f.table[x];
    for (int j = 0; j < m; ++j)
      if ((y >> (m - 1 - j)) & 1u)
        bit[std::size_t(j)][x >> 6] |= std::uint64_t(1) << (x & 63u);
  }
}

TableSim::TableSim(int n, int line_count)
    : n_(n),
      line_count_(line_count),
      words_(word_count(n)),
      last_word_mask_(tail_mask(n)),
      lines_(std::size_t(line_count) * words_, 0),
      diff_(words_, 0) {
  if (n > 20) throw std::invalid_argument("table sim limited to n <= 20");
  if (line_count < n) throw std::invalid_argument("fewer lines than inputs");
}

void TableSim::load_inputs() {
  std::memset(lines_.data(), 0, lines_.size() * sizeof(std::uint64_t));
  // Line i carries input bit n-i (big-endian embedding); ancillas stay 0.
  for (int i = 1; i <= n_; ++i) {
    std::uint64_t* li = line(i);
    for (std::size_t w = 0; w < words_; ++w) li[w] = projection_word(n_ - i, w);
  }
}

const std::vector<std::uint64_t>& TableSim::diff(const Circuit& circuit,
                                                 const OutputTables& target) {
  if (circuit.line_count != line_count_ || target.n != n_)
    throw std::invalid_argument("table sim shape mismatch");
  load_inputs();

  for (const Gate& g : circuit.gates) {
    // Dummy indices of low-arity gates may exceed line_count; only take
    // pointers to the meaningful lines.
    switch (g.kind) {
      case GateKind::Identity:
        break;
      case GateKind::Not: {
        std::uint64_t* a = line(g.args[0]);
        for (std::size_t w = 0; w < words_; ++w) a[w] = ~a[w];
        break;
      }
      case GateKind::Cnot: {
        std::uint64_t* a = line(g.args[0]);
        std::uint64_t* b = line(g.args[1]);
        for (std::size_t w = 0; w < words_; ++w) b[w] ^= a[w];
        break;
      }
      case GateKind::Swap: {
        std::uint64_t* a = line(g.args[0]);
        std::uint64_t* b = line(g.args[1]);
        for (std::size_t w = 0; w < words_; ++w) std::swap(a[w], b[w]);
        break;
      }
      case GateKind::Toffoli: {
        std::uint64_t* a = line(g.args[0]);
        std::uint64_t* b = line(g.args[1]);
        std::uint64_t* c = line(g.args[2]);
        for (std::size_t w = 0; w < words_; ++w) c[w] ^= a[w] & b[w];
        break;
      }
      case GateKind::Fredkin: {
        std::uint64_t* a = line(g.args[0]);
        std::uint64_t* b = line(g.args[1]);
        std::uint64_t* c = line(g.args[2]);
        for (std::size_t w = 0; w < words_; ++w) {
          const std::uint64_t t = (b[w] ^ c[w]) & a[w];
          b[w] ^= t;
          c[w] ^= t;
        }
        break;
      }
    }
  }

  std::memset(diff_.data(), 0, diff_.size() * sizeof(std::uint64_t));
  for (int j = 0; j < target.m; ++j) {
    const std::uint64_t* lj = line(line_count_ - target.m + 1 + j);
    const std::uint64_t* tj = target.bit[std::size_t(j)].data();
    for (std::size_t w = 0; w < words_; ++w) diff_[w] |= lj[w] ^ tj[w];
  }
  diff_[words_ - 1] &= last_word_mask_;
  return diff_;
}

std::uint64_t TableSim::diff_count(const Circuit& circuit, const OutputTables& target) {
  const auto& d = diff(circuit, target);
  std::uint64_t count = 0;
  for (std::uint64_t w : d) count += static_cast<std::uint64_t>(std::popcount(w));
  return count;
}

}  // namespace revsyn
