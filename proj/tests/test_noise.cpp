#include <doctest.h>

#include <cmath>
#include <random>

#include "revsyn/metrics.hpp"
#include "revsyn/noise.hpp"
#include "test_support.hpp"

using namespace revsyn;

TEST_CASE("zero noise reduces to the deterministic error bit-exactly") {
  std::mt19937 rng(53);
  const CouplingMap map = CouplingMap::melbourne_like();
  for (int trial = 0; trial < 30; ++trial) {
    const int l = 2 + int(rng() % 5);
    const int n = 1 + int(rng() % l);
    const Circuit c = testsupport::random_circuit(rng, l, int(rng() % 10));
    const BooleanFunction f = testsupport::random_function(rng, n, 1);

    Circuit wide = c;
    wide.line_count = std::max(l, n);
    const NoiseModel off = NoiseModel{}.scaled(0.0);
    const NoisyEstimate e = noisy_error_rate(wide, f, off, 8, map, 1234);
    CHECK(e.aggregate == exhaustive_report(wide, f).err.value());
  }
}

TEST_CASE("single NOT gate under bit-flip noise matches the closed form") {
  // NOT on one line with gate-fault probability q and no readout noise:
  // a fault re-flips the line, so P[error] = q with the bit-flip channel
  // and q/2 with the depolarizing channel.
  Circuit c;
  c.line_count = 1;
  c.gates = {Gate{GateKind::Not, {1, 2, 3}}};
  BooleanFunction f;
  f.name = "not1";
  f.n = 1;
  f.m = 1;
  f.table = {1, 0};

  NoiseModel model;
  model.p1 = 0.3;
  model.p2 = 0.0;
  model.p_meas = 0.0;
  const std::uint64_t trials = 100000;
  const CouplingMap map = CouplingMap::complete(2);

  model.channel = NoiseModel::Channel::BitFlip;
  NoisyEstimate e = noisy_error_rate(c, f, model, trials, map, 7);
  CHECK(std::abs(e.aggregate - 0.3) < 4 * e.std_error);

  model.channel = NoiseModel::Channel::Depolarizing;
  e = noisy_error_rate(c, f, model, trials, map, 7);
  CHECK(std::abs(e.aggregate - 0.15) < 4 * e.std_error);
}

TEST_CASE("readout noise alone matches the closed form") {
  Circuit c;
  c.line_count = 1;
  BooleanFunction f;
  f.name = "id1";
  f.n = 1;
  f.m = 1;
  f.table = {0, 1};
  NoiseModel model;
  model.p1 = model.p2 = 0.0;
  model.p_meas = 0.1;
  const NoisyEstimate e =
      noisy_error_rate(c, f, model, 200000, CouplingMap::complete(2), 21);
  CHECK(std::abs(e.aggregate - 0.1) < 4 * e.std_error);
}

TEST_CASE("estimates are deterministic and thread-count independent") {
  const BooleanFunction f = builtin("4mod5");
  std::mt19937 rng(59);
  const Circuit c = testsupport::random_circuit(rng, 5, 6);
  const CouplingMap map = CouplingMap::melbourne_like();
  const NoiseModel model;

  const NoisyEstimate a = noisy_error_rate(c, f, model, 2048, map, 77, 1);
  const NoisyEstimate b = noisy_error_rate(c, f, model, 2048, map, 77, 1);
  const NoisyEstimate d = noisy_error_rate(c, f, model, 2048, map, 77, 4);
  CHECK(a.failures == b.failures);
  CHECK(a.failures == d.failures);
  CHECK(a.aggregate == d.aggregate);
  CHECK(a.per_input_error == d.per_input_error);
}

TEST_CASE("error grows with the noise scale") {
  const BooleanFunction f = builtin("4mod5");
  std::mt19937 rng(61);
  const Circuit c = testsupport::random_circuit(rng, 5, 8);
  const CouplingMap map = CouplingMap::melbourne_like();

  double prev = -1, prev_se = 0;
  for (double lambda : {0.0, 0.3, 1.0, 3.0}) {
    const NoisyEstimate e =
        noisy_error_rate(c, f, NoiseModel{}.scaled(lambda), 4096, map, 5);
    CHECK(e.aggregate >= prev - 4 * (prev_se + e.std_error));
    prev = e.aggregate;
    prev_se = e.std_error;
  }
}

TEST_CASE("noise sweep is deterministic per scale across circuit sets") {
  const BooleanFunction f = builtin("4mod5");
  std::mt19937 rng(67);
  const Circuit a = testsupport::random_circuit(rng, 5, 4);
  const Circuit b = testsupport::random_circuit(rng, 5, 9);
  const CouplingMap map = CouplingMap::melbourne_like();
  const std::vector<double> lambdas = {0.0, 1.0};

  const auto both = noise_sweep({a, b}, f, NoiseModel{}, lambdas, 512, map, 3);
  const auto only_b = noise_sweep({b}, f, NoiseModel{}, lambdas, 512, map, 3);
  // The same circuit gets the same column regardless of its neighbours.
  REQUIRE(both.size() == 4);
  REQUIRE(only_b.size() == 2);
  CHECK(both[2].estimate.failures == only_b[0].estimate.failures);
  CHECK(both[3].estimate.failures == only_b[1].estimate.failures);
}

TEST_CASE("padding with self-cancelling gates never helps under noise") {
  const BooleanFunction f = builtin("4mod5");
  Circuit base;
  base.line_count = 5;
  base.gates = {Gate{GateKind::Cnot, {1, 5, 2}}, Gate{GateKind::Not, {4, 1, 2}}};
  Circuit padded = base;
  for (int i = 0; i < 6; ++i) {
    padded.gates.push_back(Gate{GateKind::Cnot, {2, 3, 1}});
    padded.gates.push_back(Gate{GateKind::Cnot, {2, 3, 1}});
  }
  const CouplingMap map = CouplingMap::melbourne_like();
  const NoisyEstimate slim = noisy_error_rate(base, f, NoiseModel{}, 8192, map, 9);
  const NoisyEstimate fat = noisy_error_rate(padded, f, NoiseModel{}, 8192, map, 9);
  CHECK(exhaustive_report(base, f).err == exhaustive_report(padded, f).err);
  CHECK(fat.aggregate >= slim.aggregate - 4 * (slim.std_error + fat.std_error));
}
