#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revsyn/cost.hpp"
#include "revsyn/ea.hpp"
#include "revsyn/noise.hpp"
#include "revsyn/truth_table.hpp"

namespace revsyn {

/// One experiment description: target function, EA budget, cost model,
/// noise model and sweep axes. Loadable from an INI-style key/value
/// document or the equivalent JSON object.
struct ExperimentConfig {
  std::string function_name;      // built-in name, or
  std::string truth_table_path;   // path to a truth-table file

  EAParams ea;
  std::string restriction_spec = "unrestricted";

  CostTable cost_table;
  std::string coupling_spec = "melbourne";  // melbourne | complete | line | <path>

  NoiseModel noise;
  std::uint64_t trials = 1024;

  std::vector<int> gate_counts;
  std::vector<double> lambdas;
  int repetitions = 16;
  bool exclude_constant = false;

  std::string out_dir = ".";

  BooleanFunction resolve_function() const;
  CouplingMap resolve_coupling() const;
  Restriction resolve_restriction(const CouplingMap& coupling) const;

  static ExperimentConfig from_text(const std::string& text);
  static ExperimentConfig load(const std::string& path);
};

struct GateSweepRow {
  int d = 0;
  int run = 0;
  double err = 0;
  std::uint64_t qc = 0;
  std::uint64_t cc = 0;
  bool constant = false;
};

struct CurvePoint {
  std::uint64_t qc = 0;
  double median = 0;
  double min = 0;
  double max = 0;
  int count = 0;
};

/// Buckets rows by qc and reports median/min/max error per bucket.
std::vector<CurvePoint> aggregate_curve(const std::vector<GateSweepRow>& rows,
                                        bool exclude_constant);

std::string gate_sweep_csv(const std::vector<GateSweepRow>& rows);
std::vector<GateSweepRow> parse_gate_sweep_csv(const std::string& text);
std::string curve_csv(const std::vector<CurvePoint>& points);

/// Command back-ends; the CLI wraps these. Each writes its data files
/// under config.out_dir and returns the paths written.
std::vector<std::string> cmd_synth(const ExperimentConfig& config);
std::vector<std::string> cmd_sweep_gates(const ExperimentConfig& config);
std::vector<std::string> cmd_sweep_noise(const ExperimentConfig& config,
                                         const std::vector<std::string>& circuit_files);

}  // namespace revsyn
