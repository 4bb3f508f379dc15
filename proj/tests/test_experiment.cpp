#include <doctest.h>

#include "revsyn/experiment.hpp"

using namespace revsyn;

namespace {

const char* kIni =
    "# sample experiment\n"
    "[function]\n"
    "name = 4mod5\n"
    "[ea]\n"
    "gates = 5\n"
    "lines = 5\n"
    "survivors = 10\n"
    "offspring = 20\n"
    "generations = 30\n"
    "batch = 16\n"
    "seed = 42\n"
    "[cost]\n"
    "coupling = line\n"
    "[noise]\n"
    "p2 = 0.02\n"
    "trials = 256\n"
    "[sweep]\n"
    "gate_counts = 2, 4\n"
    "lambdas = 0, 1\n"
    "runs = 3\n"
    "exclude_constant = true\n"
    "[output]\n"
    "dir = /tmp/exp\n";

const char* kJson = R"({
  "function": {"name": "4mod5"},
  "ea": {"gates": 5, "lines": 5, "survivors": 10, "offspring": 20,
         "generations": 30, "batch": 16, "seed": 42},
  "cost": {"coupling": "line"},
  "noise": {"p2": 0.02, "trials": 256},
  "sweep": {"gate_counts": [2, 4], "lambdas": [0, 1], "runs": 3,
            "exclude_constant": true},
  "output": {"dir": "/tmp/exp"}
})";

}  // namespace

TEST_CASE("INI and JSON encodings parse to the same config") {
  const ExperimentConfig a = ExperimentConfig::from_text(kIni);
  const ExperimentConfig b = ExperimentConfig::from_text(kJson);

  CHECK(a.function_name == "4mod5");
  CHECK(a.ea.gates == 5);
  CHECK(a.ea.master_seed == 42);
  CHECK(a.noise.p2 == 0.02);
  CHECK(a.trials == 256);
  CHECK(a.gate_counts == std::vector<int>{2, 4});
  CHECK(a.lambdas == std::vector<double>{0, 1});
  CHECK(a.repetitions == 3);
  CHECK(a.exclude_constant);
  CHECK(a.out_dir == "/tmp/exp");
  CHECK(a.coupling_spec == "line");

  CHECK(b.function_name == a.function_name);
  CHECK(b.ea.gates == a.ea.gates);
  CHECK(b.ea.master_seed == a.ea.master_seed);
  CHECK(b.noise.p2 == a.noise.p2);
  CHECK(b.gate_counts == a.gate_counts);
  CHECK(b.lambdas == a.lambdas);
  CHECK(b.repetitions == a.repetitions);
  CHECK(b.exclude_constant == a.exclude_constant);
  CHECK(b.out_dir == a.out_dir);
}

TEST_CASE("config parse errors are reported") {
  CHECK_THROWS(ExperimentConfig::from_text("key = 1\n"));        // key outside section
  CHECK_THROWS(ExperimentConfig::from_text("[ea\ngates = 1\n")); // bad header
  CHECK_THROWS(ExperimentConfig::from_text("[sweep]\nruns = 0\n"));
  CHECK_THROWS(ExperimentConfig::from_text("[ea]\ngates = pony\n"));
  CHECK_THROWS(ExperimentConfig{}.resolve_function());  // nothing named
}

TEST_CASE("curve aggregation: median/min/max per qc bucket") {
  std::vector<GateSweepRow> rows;
  auto add = [&](std::uint64_t qc, double err, bool constant = false) {
    GateSweepRow r;
    r.qc = qc;
    r.err = err;
    r.constant = constant;
    rows.push_back(r);
  };
  add(4, 0.3);
  add(4, 0.1);
  add(4, 0.2);
  add(9, 0.5);
  add(9, 0.1);
  add(2, 0.25, true);

  const auto curve = aggregate_curve(rows, false);
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].qc == 2);
  CHECK(curve[0].count == 1);
  CHECK(curve[0].min == curve[0].median);  // single-element bucket
  CHECK(curve[0].median == curve[0].max);
  CHECK(curve[1].qc == 4);
  CHECK(curve[1].median == 0.2);
  CHECK(curve[1].min == 0.1);
  CHECK(curve[1].max == 0.3);
  CHECK(curve[2].median == doctest::Approx(0.3));  // even bucket: midpoint

  for (const CurvePoint& p : curve) {
    CHECK(p.min <= p.median);
    CHECK(p.median <= p.max);
    CHECK(p.count >= 1);
  }

  const auto filtered = aggregate_curve(rows, true);
  REQUIRE(filtered.size() == 2);
  CHECK(filtered[0].qc == 4);
}

TEST_CASE("raw CSV round-trips and re-aggregates identically") {
  std::vector<GateSweepRow> rows;
  for (int i = 0; i < 10; ++i) {
    GateSweepRow r;
    r.d = 2 + i % 3;
    r.run = i;
    r.err = i * 0.0625;
    r.qc = std::uint64_t(5 + i % 4);
    r.cc = std::uint64_t(50 + i);
    r.constant = i % 5 == 0;
    rows.push_back(r);
  }
  const auto parsed = parse_gate_sweep_csv(gate_sweep_csv(rows));
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].d == rows[i].d);
    CHECK(parsed[i].run == rows[i].run);
    CHECK(parsed[i].err == rows[i].err);
    CHECK(parsed[i].qc == rows[i].qc);
    CHECK(parsed[i].cc == rows[i].cc);
    CHECK(parsed[i].constant == rows[i].constant);
  }
  // Two-path check: aggregation from the parsed CSV matches the original.
  CHECK(curve_csv(aggregate_curve(parsed, true)) ==
        curve_csv(aggregate_curve(rows, true)));
}
