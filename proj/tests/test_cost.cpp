#include <doctest.h>

#include <random>

#include "revsyn/cost.hpp"
#include "test_support.hpp"

using namespace revsyn;

TEST_CASE("quantum cost per gate kind") {
  auto qc_of = [](GateKind kind) {
    Circuit c;
    c.line_count = 3;
    c.gates = {Gate{kind, {1, 2, 3}}};
    return quantum_cost(c);
  };
  CHECK(qc_of(GateKind::Identity) == 0);
  CHECK(qc_of(GateKind::Not) == 1);
  CHECK(qc_of(GateKind::Cnot) == 1);
  CHECK(qc_of(GateKind::Swap) == 3);
  CHECK(qc_of(GateKind::Toffoli) == 5);
  CHECK(qc_of(GateKind::Fredkin) == 5);
}

TEST_CASE("melbourne-like map is a connected 15-qubit graph") {
  const CouplingMap map = CouplingMap::melbourne_like();
  CHECK(map.qubit_count == 15);
  CHECK(map.connected());
  CHECK_NOTHROW(validate_coupling(map));
  CHECK(map.adjacent(1, 2));
  CHECK(map.adjacent(2, 1));
  CHECK(!map.adjacent(1, 3));
}

TEST_CASE("coupling text round-trips") {
  const CouplingMap map = CouplingMap::line(4);
  const CouplingMap back = CouplingMap::parse(map.serialize());
  CHECK(back.qubit_count == 4);
  CHECK(back.edges == map.edges);
  CHECK_THROWS(validate_coupling(CouplingMap::parse("qubits 3\nedge 1 2\n")));  // disconnected
}

TEST_CASE("adjacent CNOT lowers to one two-qubit primitive") {
  Circuit c;
  c.line_count = 3;
  c.gates = {Gate{GateKind::Cnot, {1, 2, 3}}};
  const PrimitiveCircuit p = decompose(c, CouplingMap::line(3));
  CHECK(p.two_qubit_count() == 1);
  CHECK(p.one_qubit_count() == 0);
  CHECK(circuit_cost(c, CouplingMap::line(3)) == 10);
}

TEST_CASE("CNOT at graph distance 2 costs 13 two-qubit primitives") {
  Circuit c;
  c.line_count = 3;
  c.gates = {Gate{GateKind::Cnot, {1, 3, 2}}};
  const PrimitiveCircuit p = decompose(c, CouplingMap::line(3));
  // 2 SWAPs in (3 CNOTs each) + the gate + 2 SWAPs back: 6k+1 with k=2.
  CHECK(p.two_qubit_count() == 13);
  CHECK(circuit_cost(c, CouplingMap::line(3)) == 130);
}

TEST_CASE("adjacent Toffoli lowers to the 15-gate network") {
  Circuit c;
  c.line_count = 3;
  c.gates = {Gate{GateKind::Toffoli, {1, 2, 3}}};
  const PrimitiveCircuit p = decompose(c, CouplingMap::complete(3));
  CHECK(p.two_qubit_count() == 6);
  CHECK(p.one_qubit_count() == 9);
  CHECK(circuit_cost(c, CouplingMap::complete(3)) == 69);
}

TEST_CASE("decomposition preserves the classical function") {
  std::mt19937 rng(43);
  const CouplingMap maps[] = {CouplingMap::line(8), CouplingMap::complete(8),
                              CouplingMap::melbourne_like()};
  for (int trial = 0; trial < 150; ++trial) {
    const int l = 2 + int(rng() % 7);
    const Circuit c = testsupport::random_circuit(rng, l, 1 + int(rng() % 10));
    for (const CouplingMap& map : maps) {
      const PrimitiveCircuit p = decompose(c, map);
      for (std::uint32_t s = 0; s < (1u << l); ++s)
        CHECK(p.run_mask(s) == run_mask(c, s));
    }
  }
}

TEST_CASE("pruning never increases cost") {
  std::mt19937 rng(47);
  const CouplingMap map = CouplingMap::melbourne_like();
  for (int trial = 0; trial < 100; ++trial) {
    const int l = 2 + int(rng() % 7);
    const int m = 1 + int(rng() % l);
    const Circuit c = testsupport::random_circuit(rng, l, 1 + int(rng() % 20));
    const Circuit pruned = remove_unused_gates(c, m);
    CHECK(quantum_cost(pruned) <= quantum_cost(c));
    CHECK(circuit_cost(pruned, map) <= circuit_cost(c, map));
  }
}
