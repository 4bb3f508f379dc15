#include <doctest.h>

#include <random>

#include "revsyn/circuit.hpp"
#include "test_support.hpp"

using namespace revsyn;

TEST_CASE("NOT flips exactly its line") {
  const Gate g{GateKind::Not, {2, 1, 3}};
  CHECK(apply_gate_mask(g, 0b000) == 0b010);
  CHECK(apply_gate_mask(g, 0b010) == 0b000);
  CHECK(apply_gate_mask(g, 0b101) == 0b111);
}

TEST_CASE("CNOT flips target iff control set") {
  const Gate g{GateKind::Cnot, {1, 2, 3}};  // control line 1, target line 2
  CHECK(apply_gate_mask(g, 0b00) == 0b00);
  CHECK(apply_gate_mask(g, 0b01) == 0b11);
  CHECK(apply_gate_mask(g, 0b10) == 0b10);
  CHECK(apply_gate_mask(g, 0b11) == 0b01);
}

TEST_CASE("SWAP exchanges two lines") {
  const Gate g{GateKind::Swap, {1, 3, 2}};
  CHECK(apply_gate_mask(g, 0b001) == 0b100);
  CHECK(apply_gate_mask(g, 0b100) == 0b001);
  CHECK(apply_gate_mask(g, 0b101) == 0b101);
  CHECK(apply_gate_mask(g, 0b011) == 0b110);
}

TEST_CASE("TOFFOLI flips target iff both controls set") {
  const Gate g{GateKind::Toffoli, {1, 2, 3}};
  for (std::uint32_t s = 0; s < 8; ++s) {
    const std::uint32_t want = ((s & 0b11) == 0b11) ? (s ^ 0b100) : s;
    CHECK(apply_gate_mask(g, s) == want);
  }
}

TEST_CASE("FREDKIN swaps iff control set") {
  const Gate g{GateKind::Fredkin, {1, 2, 3}};
  CHECK(apply_gate_mask(g, 0b010) == 0b010);  // control clear: no-op
  CHECK(apply_gate_mask(g, 0b011) == 0b101);  // control set: lines 2,3 swap
  CHECK(apply_gate_mask(g, 0b101) == 0b011);
  CHECK(apply_gate_mask(g, 0b111) == 0b111);
}

TEST_CASE("every gate agrees with the naive reference on all states") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int l = 3 + int(rng() % 6);
    const Gate g = testsupport::random_gate(rng, l);
    for (std::uint32_t s = 0; s < (1u << l); ++s) {
      const auto want = testsupport::naive_apply(g, testsupport::unpack(s, l));
      CHECK(apply_gate_mask(g, s) == testsupport::pack(want));
    }
  }
}

TEST_CASE("every gate is self-inverse") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = 3 + int(rng() % 6);
    const Gate g = testsupport::random_gate(rng, l);
    for (std::uint32_t s = 0; s < (1u << l); ++s)
      CHECK(apply_gate_mask(g, apply_gate_mask(g, s)) == s);
  }
}

TEST_CASE("gates never touch lines outside their meaningful arguments") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = 3 + int(rng() % 6);
    const Gate g = testsupport::random_gate(rng, l);
    std::uint32_t touched = 0;
    for (int i = 0; i < arity(g.kind); ++i) touched |= 1u << (g.args[std::size_t(i)] - 1);
    for (std::uint32_t s = 0; s < (1u << l); ++s)
      CHECK((apply_gate_mask(g, s) ^ s) == ((apply_gate_mask(g, s) ^ s) & touched));
  }
}

TEST_CASE("circuits are permutations") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int l = 2 + int(rng() % 7);
    const Circuit c = testsupport::random_circuit(rng, l, 1 + int(rng() % 20));
    std::vector<bool> seen(std::size_t(1) << l, false);
    for (std::uint32_t s = 0; s < (1u << l); ++s) {
      const std::uint32_t out = run_mask(c, s);
      CHECK(!seen[out]);
      seen[out] = true;
    }
  }
}

TEST_CASE("input embedding and output reading are big-endian") {
  // value bit n-1 -> line 1; first output line is the most significant.
  CHECK(embed_value_mask(0b100, 3) == 0b001);
  CHECK(embed_value_mask(0b001, 3) == 0b100);
  CHECK(read_output_value(0b001 << 2, 5, 3) == 0b100);
  for (std::uint32_t v = 0; v < 32; ++v)
    CHECK(read_output_value(embed_value_mask(v, 5), 5, 5) == v);

  const BitState s = embed_input({true, false, true}, 5);
  CHECK(s.line(1));
  CHECK(!s.line(2));
  CHECK(s.line(3));
  CHECK(!s.line(4));
  CHECK(!s.line(5));
  CHECK(read_outputs(s, 2) == std::vector<bool>{false, false});
}

TEST_CASE("BitState text renders line 1 leftmost") {
  BitState s(0, 4);
  s.set_line(1, true);
  s.set_line(3, true);
  CHECK(s.to_string() == "1010");
  CHECK(BitState::from_string("1010") == s);
}

TEST_CASE("validate_gate rejects bad gates") {
  CHECK_THROWS_AS(validate_gate(Gate{GateKind::Cnot, {1, 1, 2}}, 5),
                  std::invalid_argument);  // duplicate stored index
  CHECK_THROWS_AS(validate_gate(Gate{GateKind::Cnot, {1, 6, 2}}, 5),
                  std::invalid_argument);  // meaningful index out of range
  CHECK_THROWS_AS(validate_gate(Gate{GateKind::Not, {0, 2, 3}}, 5),
                  std::invalid_argument);  // indices are 1-based
  CHECK_NOTHROW(validate_gate(Gate{GateKind::Not, {2, 7, 9}}, 5));  // dummies may exceed l
}

TEST_CASE("remove_unused_gates preserves the observed outputs") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int l = 2 + int(rng() % 7);
    const int m = 1 + int(rng() % l);
    const Circuit c = testsupport::random_circuit(rng, l, 1 + int(rng() % 25));
    const Circuit pruned = remove_unused_gates(c, m);
    CHECK(pruned.gates.size() <= c.gates.size());
    for (std::uint32_t s = 0; s < (1u << l); ++s)
      CHECK(read_output_value(run_mask(pruned, s), l, m) ==
            read_output_value(run_mask(c, s), l, m));
  }
}

TEST_CASE("remove_unused_gates drops identity and dead gates") {
  Circuit c;
  c.line_count = 4;
  c.gates = {
      Gate{GateKind::Identity, {1, 2, 3}},
      Gate{GateKind::Not, {1, 2, 3}},   // dead: line 1 never feeds line 4
      Gate{GateKind::Not, {4, 1, 2}},   // live
  };
  const Circuit pruned = remove_unused_gates(c, 1);
  REQUIRE(pruned.gates.size() == 1);
  CHECK(pruned.gates[0].kind == GateKind::Not);
  CHECK(pruned.gates[0].args[0] == 4);
}
