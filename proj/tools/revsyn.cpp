// revsyn: synthesize, evaluate, cost and sweep reversible circuits.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "revsyn/circuit_io.hpp"
#include "revsyn/cost.hpp"
#include "revsyn/experiment.hpp"
#include "revsyn/metrics.hpp"
#include "revsyn/truth_table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// Errors the user can fix by changing the invocation or config.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

revsyn::ExperimentConfig load_config(const GlobalOpts& g) {
  revsyn::ExperimentConfig cfg;
  if (!g.config_path.empty()) {
    try {
      cfg = revsyn::ExperimentConfig::load(g.config_path);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  if (g.seed) cfg.ea.master_seed = *g.seed;
  if (g.threads) cfg.ea.threads = *g.threads;
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  return cfg;
}

revsyn::BooleanFunction resolve_function_arg(const std::string& function,
                                             const std::string& table,
                                             const revsyn::ExperimentConfig& cfg) {
  try {
    if (!function.empty()) return revsyn::builtin(function);
    if (!table.empty()) return revsyn::load_truth_table_file(table);
    return cfg.resolve_function();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

revsyn::Circuit load_circuit_arg(const std::string& path) {
  try {
    return revsyn::load_circuit_file(path);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot load circuit '") + path + "': " + e.what());
  }
}

void print_paths(const std::vector<std::string>& paths) {
  for (const std::string& p : paths) std::cout << p << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible-circuit synthesis, evaluation and noise sweeps"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::uint64_t seed_value = 0;
  int threads_value = 0;
  app.add_option("--config", g.config_path, "experiment config file (INI-style or JSON)");
  app.add_option("--out", g.out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed_value, "master RNG seed");
  auto* threads_opt = app.add_option("--threads", threads_value, "worker thread count");

  std::string function, table, circuit_path, coupling_spec, restriction_spec, out_file;
  std::vector<std::string> circuit_files;
  std::vector<int> gate_counts;
  std::vector<double> lambdas;
  std::optional<int> gates, lines, survivors, offspring, generations, batch, runs;
  std::optional<double> ds;
  std::optional<std::uint64_t> trials;
  bool exclude_constant = false;

  auto add_function_opts = [&](CLI::App* cmd) {
    cmd->add_option("--function", function, "built-in function name");
    cmd->add_option("--table", table, "truth-table file");
  };
  auto add_ea_opts = [&](CLI::App* cmd) {
    cmd->add_option("--gates", gates, "circuit gate count d");
    cmd->add_option("--lines", lines, "circuit line count l");
    cmd->add_option("--survivors", survivors, "survivor count S");
    cmd->add_option("--offspring", offspring, "offspring per survivor F");
    cmd->add_option("--generations", generations, "generation count G");
    cmd->add_option("--batch", batch, "fitness sample size b");
    cmd->add_option("--ds", ds, "uniform share of the fitness batch");
    cmd->add_option("--restriction", restriction_spec, "gate restriction spec");
  };

  CLI::App* synth = app.add_subcommand("synth", "synthesize a circuit");
  add_function_opts(synth);
  add_ea_opts(synth);
  synth->add_option("--coupling", coupling_spec, "melbourne|complete|line|<file>");

  CLI::App* eval = app.add_subcommand("eval", "exhaustively evaluate a circuit");
  eval->add_option("circuit", circuit_path, "circuit file")->required();
  add_function_opts(eval);
  eval->add_option("--coupling", coupling_spec, "melbourne|complete|line|<file>");

  CLI::App* cost = app.add_subcommand("cost", "report qc and cc for a circuit");
  cost->add_option("circuit", circuit_path, "circuit file")->required();
  cost->add_option("--coupling", coupling_spec, "melbourne|complete|line|<file>");

  CLI::App* sweep_gates = app.add_subcommand("sweep-gates", "error-vs-cost sweep");
  add_function_opts(sweep_gates);
  add_ea_opts(sweep_gates);
  sweep_gates->add_option("--gate-counts", gate_counts, "gate counts to sweep");
  sweep_gates->add_option("--runs", runs, "independent runs per gate count");
  sweep_gates->add_flag("--exclude-constant", exclude_constant,
                        "drop constant circuits from the aggregated curve");

  CLI::App* sweep_noise = app.add_subcommand("sweep-noise", "error-vs-noise sweep");
  sweep_noise->add_option("circuits", circuit_files, "circuit files")->required();
  add_function_opts(sweep_noise);
  sweep_noise->add_option("--lambdas", lambdas, "noise scale factors");
  sweep_noise->add_option("--trials", trials, "trials per input");
  sweep_noise->add_option("--coupling", coupling_spec, "melbourne|complete|line|<file>");

  CLI::App* export_real = app.add_subcommand("export-real", "write RevLib .real format");
  export_real->add_option("circuit", circuit_path, "circuit file")->required();
  export_real->add_option("--out-file", out_file, "output path (default: stdout)");

  for (CLI::App* sub : app.get_subcommands({}))
    sub->fallthrough();  // let global flags appear after the subcommand

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (seed_opt->count()) g.seed = seed_value;
    if (threads_opt->count()) g.threads = threads_value;

    revsyn::ExperimentConfig cfg = load_config(g);
    if (!function.empty()) {
      cfg.function_name = function;
      cfg.truth_table_path.clear();
    }
    if (!table.empty()) {
      cfg.truth_table_path = table;
      cfg.function_name.clear();
    }
    if (!coupling_spec.empty()) cfg.coupling_spec = coupling_spec;
    if (!restriction_spec.empty()) cfg.restriction_spec = restriction_spec;
    if (gates) cfg.ea.gates = *gates;
    if (lines) cfg.ea.lines = *lines;
    if (survivors) cfg.ea.survivors = *survivors;
    if (offspring) cfg.ea.offspring = *offspring;
    if (generations) cfg.ea.generations = *generations;
    if (batch) cfg.ea.batch = *batch;
    if (ds) cfg.ea.ds = *ds;
    if (!gate_counts.empty()) cfg.gate_counts = gate_counts;
    if (!lambdas.empty()) cfg.lambdas = lambdas;
    if (runs) cfg.repetitions = *runs;
    if (trials) cfg.trials = *trials;
    if (exclude_constant) cfg.exclude_constant = true;

    if (*synth) {
      resolve_function_arg(function, table, cfg);  // fail early with exit 2
      print_paths(revsyn::cmd_synth(cfg));
      return kExitOk;
    }

    if (*eval) {
      const revsyn::Circuit circuit = load_circuit_arg(circuit_path);
      const revsyn::BooleanFunction f = resolve_function_arg(function, table, cfg);
      if (circuit.line_count < std::max(f.n, f.m))
        throw UsageError("circuit has " + std::to_string(circuit.line_count) +
                         " lines but the function needs at least " +
                         std::to_string(std::max(f.n, f.m)));
      const revsyn::ErrorReport report = revsyn::exhaustive_report(circuit, f);
      nlohmann::json out = nlohmann::json::parse(report.to_json());
      out["qc"] = revsyn::quantum_cost(circuit, cfg.cost_table);
      out["cc"] = revsyn::circuit_cost(circuit, cfg.resolve_coupling());
      std::cout << out.dump(2) << '\n';
      return kExitOk;
    }

    if (*cost) {
      const revsyn::Circuit circuit = load_circuit_arg(circuit_path);
      nlohmann::json out;
      out["qc"] = revsyn::quantum_cost(circuit, cfg.cost_table);
      out["cc"] = revsyn::circuit_cost(circuit, cfg.resolve_coupling());
      std::cout << out.dump(2) << '\n';
      return kExitOk;
    }

    if (*sweep_gates) {
      resolve_function_arg(function, table, cfg);
      print_paths(revsyn::cmd_sweep_gates(cfg));
      return kExitOk;
    }

    if (*sweep_noise) {
      resolve_function_arg(function, table, cfg);
      for (const std::string& path : circuit_files) load_circuit_arg(path);
      print_paths(revsyn::cmd_sweep_noise(cfg, circuit_files));
      return kExitOk;
    }

    if (*export_real) {
      const revsyn::Circuit circuit = load_circuit_arg(circuit_path);
      const std::string real = revsyn::export_real(circuit);
      if (out_file.empty()) {
        std::cout << real;
      } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_file);
        out << real;
      }
      return kExitOk;
    }

    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
