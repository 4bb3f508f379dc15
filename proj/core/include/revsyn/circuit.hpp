#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace revsyn {

enum class GateKind : std::uint8_t {
  Identity = 0,
  Not,
  Cnot,
  Swap,
  Toffoli,
  Fredkin,
};

inline constexpr int kGateKindCount = 6;

/// Number of lines the gate actually uses; trailing stored indices are
/// carried but ignored by evaluation.
constexpr int arity(GateKind kind) {
  switch (kind) {
    case GateKind::Identity: return 0;
    case GateKind::Not: return 1;
    case GateKind::Cnot: return 2;
    case GateKind::Swap: return 2;
    case GateKind::Toffoli: return 3;
    case GateKind::Fredkin: return 3;
  }
  return 0;
}

const char* gate_kind_name(GateKind kind);
bool gate_kind_from_name(const std::string& name, GateKind& out);

/// One reversible gate. Three 1-based line indices are always stored,
/// pairwise distinct; only the first arity(kind) are meaningful.
/// Conventions: CNOT control args[0] target args[1]; TOFFOLI controls
/// args[0..1] target args[2]; FREDKIN control args[0], swapped args[1..2].
struct Gate {
  GateKind kind = GateKind::Identity;
  std::array<std::uint8_t, 3> args = {1, 2, 3};

  bool operator==(const Gate&) const = default;
};

/// State of l lines. Line i (1-based) lives at bit (i-1); the canonical
/// text rendering puts line 1 leftmost.
struct BitState {
  std::uint32_t bits = 0;
  int width = 0;

  BitState() = default;
  BitState(std::uint32_t bits, int width) : bits(bits), width(width) {}

  bool line(int i) const { return (bits >> (i - 1)) & 1u; }
  void set_line(int i, bool v) {
    const std::uint32_t m = 1u << (i - 1);
    bits = v ? (bits | m) : (bits & ~m);
  }

  std::string to_string() const;
  static BitState from_string(const std::string& s);

  bool operator==(const BitState&) const = default;
};

struct Circuit {
  int line_count = 0;
  std::vector<Gate> gates;

  bool operator==(const Circuit&) const = default;
};

/// Validates distinctness of stored indices and that meaningful indices
/// lie in 1..line_count. Throws std::invalid_argument on violation.
void validate_gate(const Gate& gate, int line_count);
void validate_circuit(const Circuit& circuit);

/// Gate action on a raw line mask; hot path of every simulator.
inline std::uint32_t apply_gate_mask(const Gate& g, std::uint32_t s) {
  const unsigned a = g.args[0] - 1u;
  const unsigned b = g.args[1] - 1u;
  const unsigned c = g.args[2] - 1u;
  switch (g.kind) {
    case GateKind::Identity:
      return s;
    case GateKind::Not:
      return s ^ (1u << a);
    case GateKind::Cnot:
      return s ^ (((s >> a) & 1u) << b);
    case GateKind::Swap: {
      const std::uint32_t t = ((s >> a) ^ (s >> b)) & 1u;
      return s ^ ((t << a) | (t << b));
    }
    case GateKind::Toffoli:
      return s ^ ((((s >> a) & (s >> b)) & 1u) << c);
    case GateKind::Fredkin: {
      const std::uint32_t t = ((s >> b) ^ (s >> c)) & ((s >> a)) & 1u;
      return s ^ ((t << b) | (t << c));
    }
  }
  return s;
}

BitState apply_gate(const Gate& gate, const BitState& state);

/// Applies gates in sequence order.
BitState run(const Circuit& circuit, const BitState& input);

inline std::uint32_t run_mask(const Circuit& circuit, std::uint32_t s) {
  for (const Gate& g : circuit.gates) s = apply_gate_mask(g, s);
  return s;
}

/// Places the n input bits on lines 1..n (x[0] on line 1) and zeros the
/// remaining line_count - n ancilla lines.
BitState embed_input(const std::vector<bool>& x, int line_count);

/// Embeds the big-endian n-bit input value (bit n-1 of value -> line 1).
inline std::uint32_t embed_value_mask(std::uint32_t value, int n) {
  std::uint32_t s = 0;
  for (int i = 0; i < n; ++i) s |= ((value >> (n - 1 - i)) & 1u) << i;
  return s;
}

/// Last m lines in line order (line l-m+1 first).
std::vector<bool> read_outputs(const BitState& state, int m);

/// Big-endian value of the last m lines (line l-m+1 is the MSB).
inline std::uint32_t read_output_value(std::uint32_t s, int line_count, int m) {
  std::uint32_t v = 0;
  for (int j = 0; j < m; ++j)
    v |= ((s >> (line_count - m + j)) & 1u) << (m - 1 - j);
  return v;
}

/// Drops IDENTITY gates and gates outside the backward cone of influence
/// of the last m output lines. The pruned circuit computes the same
/// function on those lines for every input.
Circuit remove_unused_gates(const Circuit& circuit, int m);

}  // namespace revsyn
