#include <doctest.h>

#include <random>

#include "revsyn/metrics.hpp"
#include "revsyn/table_sim.hpp"
#include "test_support.hpp"

using namespace revsyn;

TEST_CASE("bit-parallel diff agrees with the scalar exhaustive report") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = 2 + int(rng() % 8);
    const int n = 1 + int(rng() % l);
    const int m = 1 + int(rng() % l);
    const Circuit c = testsupport::random_circuit(rng, l, int(rng() % 20));
    const BooleanFunction f = testsupport::random_function(rng, n, m);

    Circuit wide = c;
    wide.line_count = std::max(l, std::max(n, m));

    const OutputTables target(f);
    TableSim sim(n, wide.line_count);
    const ErrorReport report = exhaustive_report(wide, f);
    CHECK(sim.diff_count(wide, target) == report.mismatch);

    const auto& mask = sim.diff(wide, target);
    std::uint64_t set = 0;
    for (std::uint32_t x = 0; x < f.input_count(); ++x)
      if (TableSim::test_bit(mask, x)) ++set;
    CHECK(set == report.mismatch);
  }
}

TEST_CASE("diff mask flags exactly the disagreeing inputs") {
  // Line 6 is an untouched ancilla, so the empty circuit outputs 0 and
  // the diff flags exactly the odd-parity inputs.
  const BooleanFunction f = builtin("xor5");
  Circuit empty;
  empty.line_count = 6;
  const OutputTables target(f);
  TableSim sim(5, 6);
  const auto& mask = sim.diff(empty, target);
  for (std::uint32_t x = 0; x < 32; ++x)
    CHECK(TableSim::test_bit(mask, x) == (f.eval_value(x) == 1));
}

TEST_CASE("sim handles widths above one word") {
  // n = 7 gives a 128-bit table: exercises multi-word and masking paths.
  std::mt19937 rng(73);
  const BooleanFunction f = testsupport::random_function(rng, 7, 2);
  const Circuit c = testsupport::random_circuit(rng, 8, 12);
  TableSim sim(7, 8);
  CHECK(sim.diff_count(c, OutputTables(f)) == exhaustive_report(c, f).mismatch);
}
