#include <doctest.h>

#include <stdexcept>

#include "revsyn/circuit.hpp"
#include "revsyn/truth_table.hpp"

using namespace revsyn;

TEST_CASE("built-in class sizes") {
  // (positives, negatives) per benchmark.
  CHECK(builtin("xor5").positive_count() == 16);
  CHECK(builtin("2of5").positive_count() == 10);
  CHECK(builtin("2of5").input_count() - builtin("2of5").positive_count() == 22);
  CHECK(builtin("6sym").positive_count() == 50);
  CHECK(builtin("6sym").input_count() - builtin("6sym").positive_count() == 14);
  CHECK(builtin("9sym").positive_count() == 420);
  CHECK(builtin("9sym").input_count() - builtin("9sym").positive_count() == 92);
  CHECK(builtin("4mod5").positive_count() == 4);
  CHECK(builtin("5mod5").positive_count() == 7);
  CHECK(builtin("5mod5").input_count() - builtin("5mod5").positive_count() == 25);
}

TEST_CASE("NthPrime tables hold the first primes") {
  const BooleanFunction p3 = builtin("NthPrime3");
  CHECK(p3.n == 3);
  CHECK(p3.m == 5);
  const std::uint32_t first8[] = {2, 3, 5, 7, 11, 13, 17, 19};
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(p3.eval_value(x) == first8[x]);

  const BooleanFunction p4 = builtin("NthPrime4");
  CHECK(p4.n == 4);
  CHECK(p4.m == 6);
  CHECK(p4.eval_value(8) == 23);
  CHECK(p4.eval_value(15) == 53);
}

TEST_CASE("unknown built-in lists the known names") {
  try {
    builtin("nope");
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("5mod5") != std::string::npos);
    CHECK(msg.find("xor5") != std::string::npos);
  }
}

TEST_CASE("truth-table text round-trips") {
  for (const std::string& name : builtin_names()) {
    const BooleanFunction f = builtin(name);
    const BooleanFunction back = load_truth_table(dump_truth_table(f));
    CHECK(back.n == f.n);
    CHECK(back.m == f.m);
    CHECK(back.table == f.table);
  }
}

TEST_CASE("truth-table loader rejects malformed input") {
  CHECK_THROWS(load_truth_table("inputs 2\noutputs 1\n00 0\n01 1\n"));  // incomplete
  CHECK_THROWS(load_truth_table(
      "inputs 1\noutputs 1\n0 0\n0 1\n"));  // duplicate row
  CHECK_THROWS(load_truth_table("inputs 0\noutputs 1\n"));
  CHECK_THROWS(load_truth_table("inputs 1\noutputs 1\n0 2\n1 0\n"));  // bad bit
}

TEST_CASE("eval agrees with eval_value under the big-endian convention") {
  const BooleanFunction f = builtin("4mod5");
  // x = 5 = 0101: first input line carries the most significant bit.
  const std::vector<bool> x = {false, true, false, true};
  CHECK(f.eval(x) == std::vector<bool>{bool(f.eval_value(5))});
  CHECK(f.eval_value(5) == 1);  // 5 % 5 == 0
  CHECK(f.eval_value(6) == 0);
}

TEST_CASE("circuit_function collapses a circuit to its table") {
  Circuit c;
  c.line_count = 2;
  c.gates = {Gate{GateKind::Cnot, {1, 2, 3}}};
  const BooleanFunction f = circuit_function(c, 2, 1);
  // Output line 2 ends as x1 XOR x2.
  CHECK(f.table == std::vector<std::uint32_t>{0, 1, 1, 0});
}
