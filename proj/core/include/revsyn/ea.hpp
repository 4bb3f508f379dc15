#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revsyn/circuit.hpp"
#include "revsyn/cost.hpp"
#include "revsyn/metrics.hpp"
#include "revsyn/rng.hpp"
#include "revsyn/truth_table.hpp"

namespace revsyn {

struct EAParams {
  int gates = 10;        // d
  int lines = 5;         // l
  int survivors = 60;    // S
  int offspring = 100;   // F, elite + F-1 children per survivor
  int generations = 100; // G
  int batch = 32;        // b
  double ds = 0.5;       // share of the batch sampled uniformly
  std::uint64_t master_seed = 0;

  // Execution knobs; they never change results.
  int threads = 1;
  double time_budget_seconds = 0;  // 0 = unlimited

  int population() const { return survivors * offspring; }
};

void validate_params(const EAParams& params, const BooleanFunction& f);

/// Architecture predicate R_A over single gates. Constructors reject a
/// restriction under which some allowed gate kind has no admissible
/// argument combination for the given line count.
class Restriction {
 public:
  static Restriction unrestricted();
  /// Meaningful lines of every gate must induce a connected subgraph of
  /// the interaction graph.
  static Restriction adjacent_lines(CouplingMap graph, int line_count);
  static Restriction allowed_kinds(const std::vector<GateKind>& kinds, int line_count);
  /// Written lines of a gate of the given kind must lie in `lines`.
  static Restriction target_lines(GateKind kind, const std::vector<int>& lines,
                                  int line_count);
  static Restriction conjunction(std::vector<Restriction> parts, int line_count);

  bool admits(const Gate& gate, int line_count) const;
  std::vector<GateKind> allowed_gate_kinds() const;

  /// Parses a spec string: `unrestricted`, `adjacent`,
  /// `kinds:not,cnot,...`, `targets:<kind>=1,2,3`, parts joined by ';'.
  static Restriction parse(const std::string& spec, int line_count,
                           const CouplingMap* graph = nullptr);

 private:
  enum class Type { Unrestricted, Adjacent, Kinds, Targets, Conjunction };

  Restriction() = default;
  std::uint8_t allowed_kind_mask() const;
  void check_satisfiable(int line_count) const;

  Type type_ = Type::Unrestricted;
  CouplingMap graph_;
  std::uint8_t kind_mask_ = 0x3f;
  GateKind target_kind_ = GateKind::Identity;
  std::uint32_t target_line_mask_ = 0;
  std::vector<Restriction> parts_;
};

/// Bounded multiset of previously failed inputs, rebuilt every generation.
class FailsSet {
 public:
  explicit FailsSet(std::size_t capacity) : capacity_(capacity) {}

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<std::uint32_t>& items() const { return items_; }

  void append(const std::vector<std::uint32_t>& failed);
  /// Downsamples to capacity (uniform subset) once all appends are done.
  void finalize(Rng& rng);

  std::uint32_t sample(Rng& rng) const { return items_[rng.below(static_cast<std::uint32_t>(items_.size()))]; }

 private:
  std::size_t capacity_;
  std::vector<std::uint32_t> items_;
};

struct EvaluatedCircuit {
  int index = 0;
  std::uint32_t fitness = 0;  // ê, mismatches over the sampled batch
  std::uint64_t qc = 0;       // tie-break key
};

Gate random_gate(int line_count, const Restriction& restriction, Rng& rng);
Circuit random_circuit(const EAParams& params, const Restriction& restriction, Rng& rng);

/// METHOD-1 fitness estimate: mismatch count over a batch of ⌈ds·b⌉
/// uniform inputs plus draws from FAILS, and the failed inputs observed.
std::pair<std::uint32_t, std::vector<std::uint32_t>> estimate_fitness(
    const Circuit& circuit, const BooleanFunction& f, const FailsSet& fails,
    const EAParams& params, Rng& rng);

/// METHOD-2 mutation: one gate position replaced, argument triples
/// rejection-sampled until the restriction is satisfied.
Circuit mutate(const Circuit& circuit, const Restriction& restriction, Rng& rng);

/// One STEP 1-3 pass. Survivors occupy the first S slots of the returned
/// population. `generation` selects the deterministic RNG streams.
std::pair<std::vector<Circuit>, FailsSet> evolve_generation(
    const std::vector<Circuit>& population, const BooleanFunction& f,
    const FailsSet& fails, const EAParams& params, const Restriction& restriction,
    int generation);

struct SynthesisResult {
  Circuit best;
  ErrorReport report;
  std::uint64_t qc = 0;
  std::optional<std::uint64_t> cc;
  std::vector<std::uint32_t> best_fitness_history;  // per-generation best ê
  int generations_run = 0;
  EAParams params;
  std::string function_name;

  std::string to_json() const;
};

/// Full G-generation run; the top-S final survivors are re-evaluated
/// exhaustively and the exact-error minimum (tie-break: lower qc) wins.
SynthesisResult synthesize(const BooleanFunction& f, const EAParams& params,
                           const Restriction& restriction,
                           const CouplingMap* coupling_for_cc = nullptr);

}  // namespace revsyn
