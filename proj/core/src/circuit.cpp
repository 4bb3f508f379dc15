#include "revsyn/circuit.hpp"

#include <algorithm>

namespace revsyn {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Identity: return "id";
    case GateKind::Not: return "not";
    case GateKind::Cnot: return "cnot";
    case GateKind::Swap: return "swap";
    case GateKind::Toffoli: return "toffoli";
    case GateKind::Fredkin: return "fredkin";
  }
  return "?";
}

bool gate_kind_from_name(const std::string& name, GateKind& out) {
  for (int k = 0; k < kGateKindCount; ++k) {
    if (name == gate_kind_name(static_cast<GateKind>(k))) {
      out = static_cast<GateKind>(k);
      return true;
    }
  }
  return false;
}

std::string BitState::to_string() const {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 1; i <= width; ++i)
    if (line(i)) s[static_cast<std::size_t>(i - 1)] = '1';
  return s;
}

BitState BitState::from_string(const std::string& s) {
  if (s.size() > 32) throw std::invalid_argument("bit state wider than 32 lines");
  BitState st(0, static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      st.bits |= 1u << i;
    else if (s[i] != '0')
      throw std::invalid_argument("bit state must consist of 0/1 characters");
  }
  return st;
}

void validate_gate(const Gate& gate, int line_count) {
  if (gate.args[0] == gate.args[1] || gate.args[0] == gate.args[2] ||
      gate.args[1] == gate.args[2])
    throw std::invalid_argument("gate indices must be pairwise distinct");
  for (int i = 0; i < arity(gate.kind); ++i) {
    if (gate.args[static_cast<std::size_t>(i)] < 1 ||
        gate.args[static_cast<std::size_t>(i)] > line_count)
      throw std::invalid_argument("gate line index out of range");
  }
  for (int i = 0; i < 3; ++i)
    if (gate.args[static_cast<std::size_t>(i)] < 1)
      throw std::invalid_argument("gate line index out of range");
}

void validate_circuit(const Circuit& circuit) {
  if (circuit.line_count < 1 || circuit.line_count > 32)
    throw std::invalid_argument("line count must be in 1..32");
  for (const Gate& g : circuit.gates) validate_gate(g, circuit.line_count);
}

BitState apply_gate(const Gate& gate, const BitState& state) {
  validate_gate(gate, state.width);
  return BitState(apply_gate_mask(gate, state.bits), state.width);
}

BitState run(const Circuit& circuit, const BitState& input) {
  if (input.width != circuit.line_count)
    throw std::invalid_argument("input width does not match circuit line count");
  return BitState(run_mask(circuit, input.bits), circuit.line_count);
}

BitState embed_input(const std::vector<bool>& x, int line_count) {
  if (static_cast<int>(x.size()) > line_count)
    throw std::invalid_argument("input wider than circuit");
  BitState st(0, line_count);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) st.bits |= 1u << i;
  return st;
}

std::vector<bool> read_outputs(const BitState& state, int m) {
  if (m > state.width) throw std::invalid_argument("more outputs than lines");
  std::vector<bool> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    out[static_cast<std::size_t>(j)] = state.line(state.width - m + 1 + j);
  return out;
}

namespace {

// Lines a gate may modify / lines its written values depend on.
void gate_writes_reads(const Gate& g, std::uint32_t& writes, std::uint32_t& reads) {
  const std::uint32_t a = 1u << (g.args[0] - 1);
  const std::uint32_t b = 1u << (g.args[1] - 1);
  const std::uint32_t c = 1u << (g.args[2] - 1);
  switch (g.kind) {
    case GateKind::Identity: writes = 0; reads = 0; break;
    case GateKind::Not: writes = a; reads = a; break;
    case GateKind::Cnot: writes = b; reads = a | b; break;
    case GateKind::Swap: writes = a | b; reads = a | b; break;
    case GateKind::Toffoli: writes = c; reads = a | b | c; break;
    case GateKind::Fredkin: writes = b | c; reads = a | b | c; break;
  }
}

}  // namespace

Circuit remove_unused_gates(const Circuit& circuit, int m) {
  validate_circuit(circuit);
  if (m < 1 || m > circuit.line_count)
    throw std::invalid_argument("output count out of range");

  std::uint32_t live = 0;
  for (int j = 0; j < m; ++j)
    live |= 1u << (circuit.line_count - m + j);

  std::vector<bool> keep(circuit.gates.size(), false);
  for (std::size_t i = circuit.gates.size(); i-- > 0;) {
    const Gate& g = circuit.gates[i];
    if (g.kind == GateKind::Identity) continue;
    std::uint32_t writes = 0, reads = 0;
    gate_writes_reads(g, writes, reads);
    if ((writes & live) == 0) continue;
    keep[i] = true;
    live |= reads;
  }

  Circuit pruned;
  pruned.line_count = circuit.line_count;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i)
    if (keep[i]) pruned.gates.push_back(circuit.gates[i]);
  return pruned;
}

}  // namespace revsyn
