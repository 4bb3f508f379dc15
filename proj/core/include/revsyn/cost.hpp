#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "revsyn/circuit.hpp"

namespace revsyn {

/// Per-kind quantum cost. Defaults follow the usual primitive-gate
/// counting: NOT/CNOT 1, SWAP 3, TOFFOLI/FREDKIN 5, IDENTITY free.
struct CostTable {
  std::array<int, kGateKindCount> cost = {0, 1, 1, 3, 5, 5};

  int of(GateKind kind) const { return cost[static_cast<std::size_t>(kind)]; }
};

std::uint64_t quantum_cost(const Circuit& circuit, const CostTable& table = {});

/// Undirected connected hardware graph over qubits 1..qubit_count.
struct CouplingMap {
  int qubit_count = 0;
  std::vector<std::pair<int, int>> edges;

  bool adjacent(int a, int b) const;
  bool connected() const;

  /// 15-qubit two-row ladder standing in for a Melbourne-class device.
  static CouplingMap melbourne_like();
  static CouplingMap complete(int qubits);
  static CouplingMap line(int qubits);

  static CouplingMap parse(const std::string& text);
  static CouplingMap load_file(const std::string& path);
  std::string serialize() const;
};

void validate_coupling(const CouplingMap& map);

/// One hardware-level gate slot. OneQubit/TwoQubit entries carry cost and
/// host fault injection; Virtual entries are zero-cost bookkeeping slots
/// carrying the classical action of a block whose constituent gates have
/// no classical effect of their own (the Toffoli interior).
struct PrimitiveGate {
  enum class Hw : std::uint8_t { OneQubit, TwoQubit, Virtual };
  enum class Action : std::uint8_t { Noop, Not, Cnot, Toffoli };

  Hw hw = Hw::OneQubit;
  Action action = Action::Noop;
  std::array<std::uint8_t, 3> lines = {0, 0, 0};  // action operands
  std::array<std::uint8_t, 2> noise_lines = {0, 0};

  static PrimitiveGate one_qubit(int q, Action action = Action::Noop);
  static PrimitiveGate two_qubit(int a, int b, Action action = Action::Noop);
  static PrimitiveGate virtual_toffoli(int a, int b, int c);
};

struct PrimitiveCircuit {
  int qubit_count = 0;
  std::vector<PrimitiveGate> gates;

  std::uint64_t one_qubit_count() const;
  std::uint64_t two_qubit_count() const;

  std::uint32_t run_mask(std::uint32_t state) const;
};

/// Lowers a circuit to 1-/2-qubit primitives on the coupling map with
/// identity placement (line i on qubit i). A 2-qubit gate between qubits
/// at graph distance k is wrapped in k SWAPs (3 CNOTs each) along the
/// lowest-index shortest path, applied in and then undone.
PrimitiveCircuit decompose(const Circuit& circuit, const CouplingMap& coupling);

/// Post-routing primitive count with 2-qubit gates weighted x10.
std::uint64_t circuit_cost(const Circuit& circuit, const CouplingMap& coupling);

}  // namespace revsyn
