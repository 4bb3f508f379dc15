#include <doctest.h>

#include <random>

#include "revsyn/circuit_io.hpp"
#include "revsyn/truth_table.hpp"
#include "test_support.hpp"

using namespace revsyn;

TEST_CASE("serialize/parse round-trips random circuits") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = 1 + int(rng() % 8);
    const Circuit c = testsupport::random_circuit(rng, l, int(rng() % 15));
    CHECK(parse_circuit(serialize(c)) == c);
  }
}

TEST_CASE("parser accepts comments and blank lines") {
  const Circuit c = parse_circuit(
      "# header comment\n"
      "lines 3\n"
      "\n"
      "not 2 1 3   # trailing comment\n"
      "toffoli 1 2 3\n");
  CHECK(c.line_count == 3);
  REQUIRE(c.gates.size() == 2);
  CHECK(c.gates[0] == Gate{GateKind::Not, {2, 1, 3}});
  CHECK(c.gates[1] == Gate{GateKind::Toffoli, {1, 2, 3}});
}

TEST_CASE("parse errors carry the offending line number") {
  try {
    parse_circuit("lines 3\nnot 1 2 3\nbogus 1 2 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  CHECK_THROWS_AS(parse_circuit(""), ParseError);                       // missing header
  CHECK_THROWS_AS(parse_circuit("lines 0\n"), ParseError);              // bad line count
  CHECK_THROWS_AS(parse_circuit("lines 3\ncnot 1 1 2\n"), ParseError);  // invalid gate
  CHECK_THROWS_AS(parse_circuit("lines 3\ncnot 1 4 2\n"), ParseError);  // out of range
}

TEST_CASE("export_real emits a functionally equivalent RevLib circuit") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int l = 2 + int(rng() % 6);
    const Circuit c = testsupport::random_circuit(rng, l, 1 + int(rng() % 12));
    const Circuit back = import_real(export_real(c));
    CHECK(back.line_count == c.line_count);
    // SWAP expands to three CNOTs and IDENTITY disappears, so compare
    // functions, not gate lists.
    CHECK(circuit_function(back, l, l).table == circuit_function(c, l, l).table);
  }
}

TEST_CASE("import_real reads the documented gate subset") {
  const Circuit c = import_real(
      ".version 2.0\n"
      ".numvars 3\n"
      ".variables x1 x2 x3\n"
      ".begin\n"
      "t1 x3\n"
      "t2 x1 x2\n"
      "t3 x1 x2 x3\n"
      "f3 x1 x2 x3\n"
      ".end\n");
  CHECK(c.line_count == 3);
  REQUIRE(c.gates.size() == 4);
  CHECK(c.gates[0].kind == GateKind::Not);
  CHECK(c.gates[0].args[0] == 3);
  CHECK(c.gates[1].kind == GateKind::Cnot);
  CHECK(c.gates[2].kind == GateKind::Toffoli);
  CHECK(c.gates[3].kind == GateKind::Fredkin);
}
