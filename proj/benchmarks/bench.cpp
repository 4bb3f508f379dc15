#include <benchmark/benchmark.h>

#include <random>

#include "revsyn/cost.hpp"
#include "revsyn/ea.hpp"
#include "revsyn/noise.hpp"
#include "revsyn/table_sim.hpp"

using namespace revsyn;

namespace {

Circuit make_circuit(int lines, int gates, std::uint32_t seed) {
  EAParams params;
  params.gates = gates;
  params.lines = lines;
  Rng rng(seed);
  return random_circuit(params, Restriction::unrestricted(), rng);
}

void BM_GateApplication(benchmark::State& state) {
  const Circuit c = make_circuit(8, 1000, 1);
  std::uint32_t s = 0;
  for (auto _ : state) {
    s = run_mask(c, s + 1);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(c.gates.size()));
  state.counters["gate_ops_per_s"] =
      benchmark::Counter(double(state.iterations() * std::int64_t(c.gates.size())),
                         benchmark::Counter::kIsRate);
}
BENCHMARK(BM_GateApplication);

void BM_TableSimDiff(benchmark::State& state) {
  const BooleanFunction f = builtin("5mod5");
  const Circuit c = make_circuit(6, int(state.range(0)), 2);
  const OutputTables target(f);
  TableSim sim(f.n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(sim.diff_count(c, target));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TableSimDiff)->Arg(14)->Arg(20);

void BM_EvolveGeneration(benchmark::State& state) {
  const BooleanFunction f = builtin("5mod5");
  EAParams params;
  params.gates = 20;
  params.lines = 6;
  params.survivors = 60;
  params.offspring = 100;
  params.batch = 32;
  const Restriction r = Restriction::unrestricted();
  Rng init(3);
  std::vector<Circuit> pop;
  for (int i = 0; i < params.population(); ++i)
    pop.push_back(random_circuit(params, r, init));
  int generation = 0;
  FailsSet fails(64 * std::size_t(params.batch));
  for (auto _ : state) {
    auto [next, next_fails] = evolve_generation(pop, f, fails, params, r, generation++);
    pop = std::move(next);
    fails = std::move(next_fails);
  }
  state.SetItemsProcessed(state.iterations() * params.population());
}
BENCHMARK(BM_EvolveGeneration)->Unit(benchmark::kMillisecond);

void BM_NoisyTrials(benchmark::State& state) {
  const BooleanFunction f = builtin("4mod5");
  const Circuit c = make_circuit(5, 8, 4);
  const CouplingMap map = CouplingMap::melbourne_like();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        noisy_error_rate(c, f, NoiseModel{}, std::uint64_t(state.range(0)), map, 5));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}
BENCHMARK(BM_NoisyTrials)->Arg(256)->Unit(benchmark::kMillisecond);

// The published reference workload: 5mod5, l=6, d=20, G=2000, S=60,
// F=100, b=32, single-threaded end to end.
void BM_ReferenceSynthesis(benchmark::State& state) {
  const BooleanFunction f = builtin("5mod5");
  EAParams params;
  params.gates = 20;
  params.lines = 6;
  params.survivors = 60;
  params.offspring = 100;
  params.generations = 2000;
  params.batch = 32;
  params.master_seed = 1;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    params.master_seed = seed++;
    benchmark::DoNotOptimize(synthesize(f, params, Restriction::unrestricted()));
  }
}
BENCHMARK(BM_ReferenceSynthesis)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
