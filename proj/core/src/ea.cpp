#include "revsyn/ea.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "revsyn/circuit_io.hpp"
#include "revsyn/table_sim.hpp"

namespace revsyn {

namespace {

// Stream tags keep RNG sequences independent across uses.
enum StreamTag : std::uint64_t {
  kInitStream = 1,
  kEvalStream = 2,
  kMutateStream = 3,
  kFailsStream = 4,
};

constexpr int kArgRetries = 1000;
constexpr int kTotalRetries = 1000000;

}  // namespace

void validate_params(const EAParams& params, const BooleanFunction& f) {
  validate_function(f);
  if (params.gates < 1) throw std::invalid_argument("d must be >= 1");
  if (params.lines < std::max(f.n, f.m) || params.lines > 32)
    throw std::invalid_argument("l must be in max(n, m)..32");
  if (params.survivors < 1) throw std::invalid_argument("S must be >= 1");
  if (params.offspring < 2) throw std::invalid_argument("F must be >= 2");
  if (params.generations < 1) throw std::invalid_argument("G must be >= 1");
  if (params.batch < 1) throw std::invalid_argument("b must be >= 1");
  if (params.ds < 0 || params.ds > 1) throw std::invalid_argument("ds must be in [0,1]");
  if (params.threads < 1) throw std::invalid_argument("threads must be >= 1");
}

// ---------------------------------------------------------------- Restriction

Restriction Restriction::unrestricted() { return Restriction(); }

Restriction Restriction::adjacent_lines(CouplingMap graph, int line_count) {
  validate_coupling(graph);
  if (graph.qubit_count < line_count)
    throw std::invalid_argument("interaction graph smaller than line count");
  Restriction r;
  r.type_ = Type::Adjacent;
  r.graph_ = std::move(graph);
  r.check_satisfiable(line_count);
  return r;
}

Restriction Restriction::allowed_kinds(const std::vector<GateKind>& kinds,
                                       int line_count) {
  if (kinds.empty()) throw std::invalid_argument("allowed kind set must be non-empty");
  Restriction r;
  r.type_ = Type::Kinds;
  r.kind_mask_ = 0;
  for (GateKind k : kinds) r.kind_mask_ |= std::uint8_t(1) << static_cast<int>(k);
  r.check_satisfiable(line_count);
  return r;
}

Restriction Restriction::target_lines(GateKind kind, const std::vector<int>& lines,
                                      int line_count) {
  Restriction r;
  r.type_ = Type::Targets;
  r.target_kind_ = kind;
  for (int line : lines) {
    if (line < 1 || line > 32) throw std::invalid_argument("target line out of range");
    r.target_line_mask_ |= 1u << (line - 1);
  }
  r.check_satisfiable(line_count);
  return r;
}

Restriction Restriction::conjunction(std::vector<Restriction> parts, int line_count) {
  Restriction r;
  r.type_ = Type::Conjunction;
  r.parts_ = std::move(parts);
  r.check_satisfiable(line_count);
  return r;
}

std::uint8_t Restriction::allowed_kind_mask() const {
  switch (type_) {
    case Type::Kinds:
      return kind_mask_;
    case Type::Conjunction: {
      std::uint8_t mask = 0x3f;
      for (const Restriction& p : parts_) mask &= p.allowed_kind_mask();
      return mask;
    }
    default:
      return 0x3f;
  }
}

std::vector<GateKind> Restriction::allowed_gate_kinds() const {
  const std::uint8_t mask = allowed_kind_mask();
  std::vector<GateKind> kinds;
  for (int k = 0; k < kGateKindCount; ++k)
    if (mask & (1u << k)) kinds.push_back(static_cast<GateKind>(k));
  return kinds;
}

namespace {

std::uint32_t written_lines_mask(const Gate& g) {
  const std::uint32_t a = 1u << (g.args[0] - 1);
  const std::uint32_t b = 1u << (g.args[1] - 1);
  const std::uint32_t c = 1u << (g.args[2] - 1);
  switch (g.kind) {
    case GateKind::Identity: return 0;
    case GateKind::Not: return a;
    case GateKind::Cnot: return b;
    case GateKind::Swap: return a | b;
    case GateKind::Toffoli: return c;
    case GateKind::Fredkin: return b | c;
  }
  return 0;
}

}  // namespace

bool Restriction::admits(const Gate& gate, int line_count) const {
  switch (type_) {
    case Type::Unrestricted:
      return true;
    case Type::Adjacent: {
      const int used = arity(gate.kind);
      if (used < 2) return true;
      const int a = gate.args[0], b = gate.args[1], c = gate.args[2];
      if (used == 2) return graph_.adjacent(a, b);
      // Three meaningful lines: connected iff at least two pairs touch.
      const int pairs = int(graph_.adjacent(a, b)) + int(graph_.adjacent(a, c)) +
                        int(graph_.adjacent(b, c));
      return pairs >= 2;
    }
    case Type::Kinds:
      return (kind_mask_ >> static_cast<int>(gate.kind)) & 1u;
    case Type::Targets: {
      if (gate.kind != target_kind_) return true;
      const std::uint32_t written = written_lines_mask(gate);
      return (written & ~target_line_mask_) == 0;
    }
    case Type::Conjunction:
      for (const Restriction& p : parts_)
        if (!p.admits(gate, line_count)) return false;
      return true;
  }
  return true;
}

void Restriction::check_satisfiable(int line_count) const {
  const int domain = std::max(line_count, 3);
  for (GateKind kind : allowed_gate_kinds()) {
    bool found = false;
    for (int a = 1; a <= domain && !found; ++a)
      for (int b = 1; b <= domain && !found; ++b)
        for (int c = 1; c <= domain && !found; ++c) {
          if (a == b || a == c || b == c) continue;
          Gate g{kind, {std::uint8_t(a), std::uint8_t(b), std::uint8_t(c)}};
          bool in_range = true;
          for (int i = 0; i < arity(kind); ++i)
            if (g.args[std::size_t(i)] > line_count) in_range = false;
          if (in_range && admits(g, line_count)) found = true;
        }
    if (!found)
      throw std::invalid_argument(std::string("restriction admits no '") +
                                  gate_kind_name(kind) + "' gate");
  }
}

Restriction Restriction::parse(const std::string& spec, int line_count,
                               const CouplingMap* graph) {
  std::vector<Restriction> parts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find(';', start);
    if (end == std::string::npos) end = spec.size();
    std::string part = spec.substr(start, end - start);
    start = end + 1;
    // trim
    const auto a = part.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto z = part.find_last_not_of(" \t");
    part = part.substr(a, z - a + 1);

    if (part == "unrestricted") {
      parts.push_back(unrestricted());
    } else if (part == "adjacent") {
      parts.push_back(adjacent_lines(graph ? *graph : CouplingMap::line(line_count),
                                     line_count));
    } else if (part.rfind("kinds:", 0) == 0) {
      std::vector<GateKind> kinds;
      std::istringstream list(part.substr(6));
      std::string name;
      while (std::getline(list, name, ',')) {
        GateKind k;
        if (!gate_kind_from_name(name, k))
          throw std::invalid_argument("unknown gate kind '" + name + "'");
        kinds.push_back(k);
      }
      parts.push_back(allowed_kinds(kinds, line_count));
    } else if (part.rfind("targets:", 0) == 0) {
      const std::string body = part.substr(8);
      const auto eq = body.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("targets restriction needs '<kind>=<lines>'");
      GateKind k;
      if (!gate_kind_from_name(body.substr(0, eq), k))
        throw std::invalid_argument("unknown gate kind in targets restriction");
      std::vector<int> lines;
      std::istringstream list(body.substr(eq + 1));
      std::string tok;
      while (std::getline(list, tok, ',')) lines.push_back(std::stoi(tok));
      parts.push_back(target_lines(k, lines, line_count));
    } else {
      throw std::invalid_argument("unknown restriction '" + part + "'");
    }
  }
  if (parts.empty()) return unrestricted();
  if (parts.size() == 1) return parts.front();
  return conjunction(std::move(parts), line_count);
}

// ------------------------------------------------------------------ FailsSet

void FailsSet::append(const std::vector<std::uint32_t>& failed) {
  items_.insert(items_.end(), failed.begin(), failed.end());
}

void FailsSet::finalize(Rng& rng) {
  if (items_.size() <= capacity_) return;
  // Uniform subset via partial Fisher-Yates.
  for (std::size_t i = 0; i < capacity_; ++i) {
    const std::size_t j =
        i + rng.below(static_cast<std::uint32_t>(items_.size() - i));
    std::swap(items_[i], items_[j]);
  }
  items_.resize(capacity_);
}

// ------------------------------------------------------------------- sampling

namespace {

// Ordered distinct triple, uniform over the domain 1..domain.
std::array<std::uint8_t, 3> random_triple(int domain, Rng& rng) {
  int a = static_cast<int>(rng.below(static_cast<std::uint32_t>(domain))) + 1;
  int b = static_cast<int>(rng.below(static_cast<std::uint32_t>(domain - 1))) + 1;
  if (b >= a) ++b;
  int c = static_cast<int>(rng.below(static_cast<std::uint32_t>(domain - 2))) + 1;
  const int lo = std::min(a, b), hi = std::max(a, b);
  if (c >= lo) ++c;
  if (c >= hi) ++c;
  return {std::uint8_t(a), std::uint8_t(b), std::uint8_t(c)};
}

bool meaningful_in_range(const Gate& g, int line_count) {
  for (int i = 0; i < arity(g.kind); ++i)
    if (g.args[std::size_t(i)] > line_count) return false;
  return true;
}

}  // namespace

Gate random_gate(int line_count, const Restriction& restriction, Rng& rng) {
  // METHOD 2 samples arguments from {1..l}; for l < 3 the dummy slots of
  // low-arity gates extend the domain so three distinct indices exist.
  const int domain = std::max(line_count, 3);
  const std::vector<GateKind> kinds = restriction.allowed_gate_kinds();

  int total = 0;
  while (total < kTotalRetries) {
    const GateKind kind = kinds[rng.below(static_cast<std::uint32_t>(kinds.size()))];
    for (int attempt = 0; attempt < kArgRetries && total < kTotalRetries;
         ++attempt, ++total) {
      Gate g{kind, random_triple(domain, rng)};
      if (meaningful_in_range(g, line_count) && restriction.admits(g, line_count))
        return g;
    }
  }
  throw std::runtime_error("restriction appears unsatisfiable: gate sampling gave up");
}

Circuit random_circuit(const EAParams& params, const Restriction& restriction,
                       Rng& rng) {
  Circuit c;
  c.line_count = params.lines;
  c.gates.reserve(static_cast<std::size_t>(params.gates));
  for (int i = 0; i < params.gates; ++i)
    c.gates.push_back(random_gate(params.lines, restriction, rng));
  return c;
}

Circuit mutate(const Circuit& circuit, const Restriction& restriction, Rng& rng) {
  if (circuit.gates.empty()) throw std::invalid_argument("cannot mutate empty circuit");
  const int domain = std::max(circuit.line_count, 3);
  const std::vector<GateKind> kinds = restriction.allowed_gate_kinds();

  Circuit child = circuit;
  const std::size_t p = rng.below(static_cast<std::uint32_t>(circuit.gates.size()));
  GateKind kind = kinds[rng.below(static_cast<std::uint32_t>(kinds.size()))];

  int total = 0;
  while (total < kTotalRetries) {
    for (int attempt = 0; attempt < kArgRetries && total < kTotalRetries;
         ++attempt, ++total) {
      Gate g{kind, random_triple(domain, rng)};
      if (meaningful_in_range(g, circuit.line_count) &&
          restriction.admits(g, circuit.line_count)) {
        child.gates[p] = g;
        return child;
      }
    }
    // The chosen kind may admit no arguments; fall back to a fresh kind.
    kind = kinds[rng.below(static_cast<std::uint32_t>(kinds.size()))];
  }
  throw std::runtime_error("restriction appears unsatisfiable: mutation gave up");
}

// ------------------------------------------------------------------- fitness

namespace {

struct BatchPlan {
  std::uint32_t uniform = 0;     // leading uniform draws (⌈ds·b⌉)
  std::uint32_t from_fails = 0;  // draws taken from FAILS
  std::uint32_t shortfall = 0;   // trailing uniform draws covering FAILS shortfall
};

BatchPlan plan_batch(const EAParams& params, std::size_t fails_size) {
  const auto b = static_cast<std::uint32_t>(params.batch);
  BatchPlan plan;
  plan.uniform = std::min<std::uint32_t>(
      b, static_cast<std::uint32_t>(std::ceil(params.ds * params.batch)));
  // ⌈ds·b⌉ + ⌈(1−ds)·b⌉ can overshoot b by one; the FAILS draw is capped
  // so the batch is exactly b.
  const std::uint32_t fails_target = std::min<std::uint32_t>(
      b - plan.uniform,
      static_cast<std::uint32_t>(std::ceil((1.0 - params.ds) * params.batch)));
  plan.from_fails = std::min<std::uint32_t>(
      fails_target, static_cast<std::uint32_t>(fails_size));
  plan.shortfall = b - plan.uniform - plan.from_fails;
  return plan;
}

// Scores one circuit's diff mask on a freshly sampled batch.
std::uint32_t score_batch(const std::vector<std::uint64_t>& diff_mask,
                          const FailsSet& fails, const EAParams& params, int n,
                          Rng& rng, std::vector<std::uint32_t>& failed_out) {
  const BatchPlan plan = plan_batch(params, fails.size());
  const auto input_count = static_cast<std::uint32_t>(std::uint64_t(1) << n);
  std::uint32_t mismatches = 0;

  auto check = [&](std::uint32_t x) {
    if (TableSim::test_bit(diff_mask, x)) {
      ++mismatches;
      failed_out.push_back(x);
    }
  };
  for (std::uint32_t i = 0; i < plan.uniform; ++i) check(rng.below(input_count));
  for (std::uint32_t i = 0; i < plan.from_fails; ++i) check(fails.sample(rng));
  for (std::uint32_t i = 0; i < plan.shortfall; ++i) check(rng.below(input_count));
  return mismatches;
}

}  // namespace

std::pair<std::uint32_t, std::vector<std::uint32_t>> estimate_fitness(
    const Circuit& circuit, const BooleanFunction& f, const FailsSet& fails,
    const EAParams& params, Rng& rng) {
  validate_params(params, f);
  const OutputTables tables(f);
  TableSim sim(f.n, circuit.line_count);
  const auto& diff = sim.diff(circuit, tables);
  std::vector<std::uint32_t> failed;
  const std::uint32_t fitness = score_batch(diff, fails, params, f.n, rng, failed);
  return {fitness, std::move(failed)};
}

// ----------------------------------------------------------------- evolution

namespace {

struct GenerationStats {
  std::vector<Circuit> next_population;
  FailsSet next_fails{0};
  std::uint32_t best_fitness = 0;
};

GenerationStats evolve_step(const std::vector<Circuit>& population,
                            const BooleanFunction& f, const FailsSet& fails,
                            const EAParams& params, const Restriction& restriction,
                            int generation, const OutputTables& tables) {
  const int pop_size = params.population();
  if (static_cast<int>(population.size()) != pop_size)
    throw std::invalid_argument("population size must equal S*F");

  std::vector<std::uint32_t> fitness(population.size());
  std::vector<std::uint64_t> qc(population.size());
  std::vector<std::vector<std::uint32_t>> failed(population.size());

  // STEP 1: per-individual RNG streams keyed by (seed, generation, index)
  // make the result independent of the thread partition.
  auto eval_range = [&](std::size_t begin, std::size_t end) {
    TableSim sim(f.n, params.lines);
    for (std::size_t i = begin; i < end; ++i) {
      const auto& diff = sim.diff(population[i], tables);
      Rng rng = derive_stream(params.master_seed, kEvalStream,
                              static_cast<std::uint64_t>(generation), i);
      fitness[i] = score_batch(diff, fails, params, f.n, rng, failed[i]);
      qc[i] = quantum_cost(population[i]);
    }
  };

  if (params.threads <= 1) {
    eval_range(0, population.size());
  } else {
    const std::size_t chunk =
        (population.size() + static_cast<std::size_t>(params.threads) - 1) /
        static_cast<std::size_t>(params.threads);
    std::vector<std::future<void>> workers;
    for (std::size_t begin = 0; begin < population.size(); begin += chunk) {
      const std::size_t end = std::min(begin + chunk, population.size());
      workers.push_back(std::async(std::launch::async, eval_range, begin, end));
    }
    for (auto& w : workers) w.get();
  }

  GenerationStats stats;
  stats.next_fails = FailsSet(64 * static_cast<std::size_t>(params.batch));
  for (const auto& fl : failed) stats.next_fails.append(fl);
  Rng fails_rng = derive_stream(params.master_seed, kFailsStream,
                                static_cast<std::uint64_t>(generation));
  stats.next_fails.finalize(fails_rng);

  // STEP 2: truncation selection on (ê, qc, index).
  std::vector<EvaluatedCircuit> ranked(population.size());
  for (std::size_t i = 0; i < population.size(); ++i)
    ranked[i] = {static_cast<int>(i), fitness[i], qc[i]};
  std::sort(ranked.begin(), ranked.end(),
            [](const EvaluatedCircuit& a, const EvaluatedCircuit& b) {
              if (a.fitness != b.fitness) return a.fitness < b.fitness;
              if (a.qc != b.qc) return a.qc < b.qc;
              return a.index < b.index;
            });
  stats.best_fitness = ranked.front().fitness;

  // STEP 3: elites first, then F-1 children per survivor.
  stats.next_population.reserve(population.size());
  for (int s = 0; s < params.survivors; ++s)
    stats.next_population.push_back(population[static_cast<std::size_t>(ranked[std::size_t(s)].index)]);
  for (int s = 0; s < params.survivors; ++s) {
    const Circuit& parent = stats.next_population[static_cast<std::size_t>(s)];
    for (int j = 0; j < params.offspring - 1; ++j) {
      const std::size_t child_index = stats.next_population.size();
      Rng rng = derive_stream(params.master_seed, kMutateStream,
                              static_cast<std::uint64_t>(generation), child_index);
      stats.next_population.push_back(mutate(parent, restriction, rng));
    }
  }
  return stats;
}

}  // namespace

std::pair<std::vector<Circuit>, FailsSet> evolve_generation(
    const std::vector<Circuit>& population, const BooleanFunction& f,
    const FailsSet& fails, const EAParams& params, const Restriction& restriction,
    int generation) {
  validate_params(params, f);
  const OutputTables tables(f);
  GenerationStats stats =
      evolve_step(population, f, fails, params, restriction, generation, tables);
  return {std::move(stats.next_population), std::move(stats.next_fails)};
}

SynthesisResult synthesize(const BooleanFunction& f, const EAParams& params,
                           const Restriction& restriction,
                           const CouplingMap* coupling_for_cc) {
  validate_params(params, f);
  const auto start = std::chrono::steady_clock::now();
  const OutputTables tables(f);

  std::vector<Circuit> population;
  population.reserve(static_cast<std::size_t>(params.population()));
  for (int i = 0; i < params.population(); ++i) {
    Rng rng = derive_stream(params.master_seed, kInitStream,
                            static_cast<std::uint64_t>(i));
    population.push_back(random_circuit(params, restriction, rng));
  }

  FailsSet fails(64 * static_cast<std::size_t>(params.batch));
  SynthesisResult result;
  result.params = params;
  result.function_name = f.name;

  auto budget_exceeded = [&] {
    if (params.time_budget_seconds <= 0) return false;
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    return elapsed.count() > params.time_budget_seconds;
  };

  for (int gen = 0; gen < params.generations; ++gen) {
    if (budget_exceeded()) break;
    GenerationStats stats =
        evolve_step(population, f, fails, params, restriction, gen, tables);
    population = std::move(stats.next_population);
    fails = std::move(stats.next_fails);
    result.best_fitness_history.push_back(stats.best_fitness);
    ++result.generations_run;
  }

  // Final selection: sampled ê is too noisy to pick a winner, so the
  // top-S survivors are re-scored on the full input set.
  TableSim sim(f.n, params.lines);
  std::uint64_t best_err = ~std::uint64_t(0);
  std::uint64_t best_qc = ~std::uint64_t(0);
  std::size_t best_index = 0;
  for (int s = 0; s < params.survivors; ++s) {
    const auto i = static_cast<std::size_t>(s);
    const std::uint64_t exact = sim.diff_count(population[i], tables);
    const std::uint64_t cost = quantum_cost(population[i]);
    if (exact < best_err || (exact == best_err && cost < best_qc)) {
      best_err = exact;
      best_qc = cost;
      best_index = i;
    }
  }

  result.best = population[best_index];
  result.report = exhaustive_report(result.best, f);
  result.qc = best_qc;
  if (coupling_for_cc) result.cc = circuit_cost(result.best, *coupling_for_cc);
  return result;
}

std::string SynthesisResult::to_json() const {
  nlohmann::json j;
  j["function"] = function_name;
  j["circuit"] = serialize(best);
  j["report"] = nlohmann::json::parse(report.to_json());
  j["qc"] = qc;
  if (cc)
    j["cc"] = *cc;
  else
    j["cc"] = nullptr;
  j["generations_run"] = generations_run;
  j["best_fitness_history"] = best_fitness_history;
  j["params"] = {
      {"gates", params.gates},         {"lines", params.lines},
      {"survivors", params.survivors}, {"offspring", params.offspring},
      {"generations", params.generations}, {"batch", params.batch},
      {"ds", params.ds},               {"seed", params.master_seed},
  };
  return j.dump(2);
}

}  // namespace revsyn
