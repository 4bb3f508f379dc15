#include "revsyn/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "revsyn/circuit_io.hpp"

namespace revsyn {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto z = s.find_last_not_of(" \t\r");
  return s.substr(a, z - a + 1);
}

// INI-ish key/value document with [section] headers, lowered to the same
// JSON object shape the JSON encoding uses.
json parse_ini(const std::string& text) {
  json j = json::object();
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": key outside any [section]");
    j[section][key] = value;
  }
  return j;
}

const json* find(const json& j, const std::string& sec, const std::string& key) {
  const auto s = j.find(sec);
  if (s == j.end()) return nullptr;
  const auto k = s->find(key);
  if (k == s->end()) return nullptr;
  return &*k;
}

std::string get_str(const json& j, const std::string& sec, const std::string& key,
                    const std::string& def) {
  const json* v = find(j, sec, key);
  if (!v) return def;
  if (v->is_string()) return v->get<std::string>();
  return v->dump();
}

template <typename T>
T get_num(const json& j, const std::string& sec, const std::string& key, T def) {
  const json* v = find(j, sec, key);
  if (!v) return def;
  if (v->is_number()) return v->get<T>();
  if (v->is_string()) {
    std::istringstream in(v->get<std::string>());
    T out{};
    if (!(in >> out))
      throw std::runtime_error("config: bad numeric value for " + sec + "." + key);
    return out;
  }
  throw std::runtime_error("config: bad value for " + sec + "." + key);
}

bool get_bool(const json& j, const std::string& sec, const std::string& key, bool def) {
  const json* v = find(j, sec, key);
  if (!v) return def;
  if (v->is_boolean()) return v->get<bool>();
  const std::string s = v->is_string() ? v->get<std::string>() : v->dump();
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::runtime_error("config: bad boolean for " + sec + "." + key);
}

template <typename T>
std::vector<T> get_list(const json& j, const std::string& sec, const std::string& key) {
  const json* v = find(j, sec, key);
  if (!v) return {};
  std::vector<T> out;
  if (v->is_array()) {
    for (const auto& item : *v) out.push_back(item.get<T>());
    return out;
  }
  std::istringstream in(v->is_string() ? v->get<std::string>() : v->dump());
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::istringstream one(trim(tok));
    T value{};
    if (!(one >> value))
      throw std::runtime_error("config: bad list item for " + sec + "." + key);
    out.push_back(value);
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const json j = (first != std::string::npos && text[first] == '{')
                     ? json::parse(text)
                     : parse_ini(text);

  ExperimentConfig cfg;
  cfg.function_name = get_str(j, "function", "name", "");
  cfg.truth_table_path = get_str(j, "function", "table", "");

  cfg.ea.gates = get_num(j, "ea", "gates", cfg.ea.gates);
  cfg.ea.lines = get_num(j, "ea", "lines", cfg.ea.lines);
  cfg.ea.survivors = get_num(j, "ea", "survivors", cfg.ea.survivors);
  cfg.ea.offspring = get_num(j, "ea", "offspring", cfg.ea.offspring);
  cfg.ea.generations = get_num(j, "ea", "generations", cfg.ea.generations);
  cfg.ea.batch = get_num(j, "ea", "batch", cfg.ea.batch);
  cfg.ea.ds = get_num(j, "ea", "ds", cfg.ea.ds);
  cfg.ea.master_seed = get_num(j, "ea", "seed", cfg.ea.master_seed);
  cfg.ea.threads = get_num(j, "ea", "threads", cfg.ea.threads);
  cfg.ea.time_budget_seconds =
      get_num(j, "ea", "time_budget", cfg.ea.time_budget_seconds);

  cfg.restriction_spec = get_str(j, "restriction", "spec", cfg.restriction_spec);

  cfg.coupling_spec = get_str(j, "cost", "coupling", cfg.coupling_spec);
  const char* kind_keys[] = {"id", "not", "cnot", "swap", "toffoli", "fredkin"};
  for (int k = 0; k < kGateKindCount; ++k)
    cfg.cost_table.cost[std::size_t(k)] =
        get_num(j, "cost", kind_keys[k], cfg.cost_table.cost[std::size_t(k)]);

  cfg.noise.p1 = get_num(j, "noise", "p1", cfg.noise.p1);
  cfg.noise.p2 = get_num(j, "noise", "p2", cfg.noise.p2);
  cfg.noise.p_meas = get_num(j, "noise", "p_meas", cfg.noise.p_meas);
  cfg.noise.scale = get_num(j, "noise", "scale", cfg.noise.scale);
  const std::string channel = get_str(j, "noise", "channel", "depolarizing");
  if (channel == "depolarizing")
    cfg.noise.channel = NoiseModel::Channel::Depolarizing;
  else if (channel == "bitflip")
    cfg.noise.channel = NoiseModel::Channel::BitFlip;
  else
    throw std::runtime_error("config: unknown noise channel '" + channel + "'");
  cfg.trials = get_num<std::uint64_t>(j, "noise", "trials", cfg.trials);

  cfg.gate_counts = get_list<int>(j, "sweep", "gate_counts");
  cfg.lambdas = get_list<double>(j, "sweep", "lambdas");
  cfg.repetitions = get_num(j, "sweep", "runs", cfg.repetitions);
  cfg.exclude_constant = get_bool(j, "sweep", "exclude_constant", false);
  if (cfg.repetitions < 1) throw std::runtime_error("config: runs must be >= 1");

  cfg.out_dir = get_str(j, "output", "dir", cfg.out_dir);
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

BooleanFunction ExperimentConfig::resolve_function() const {
  if (!function_name.empty()) return builtin(function_name);
  if (!truth_table_path.empty()) return load_truth_table_file(truth_table_path);
  throw std::runtime_error("config names neither a built-in function nor a table");
}

CouplingMap ExperimentConfig::resolve_coupling() const {
  if (coupling_spec == "melbourne") return CouplingMap::melbourne_like();
  if (coupling_spec == "complete") return CouplingMap::complete(std::max(ea.lines, 2));
  if (coupling_spec == "line") return CouplingMap::line(std::max(ea.lines, 2));
  return CouplingMap::load_file(coupling_spec);
}

Restriction ExperimentConfig::resolve_restriction(const CouplingMap& coupling) const {
  return Restriction::parse(restriction_spec, ea.lines, &coupling);
}

std::vector<CurvePoint> aggregate_curve(const std::vector<GateSweepRow>& rows,
                                        bool exclude_constant) {
  std::vector<GateSweepRow> kept;
  for (const GateSweepRow& r : rows)
    if (!(exclude_constant && r.constant)) kept.push_back(r);

  std::sort(kept.begin(), kept.end(), [](const GateSweepRow& a, const GateSweepRow& b) {
    return a.qc != b.qc ? a.qc < b.qc : a.err < b.err;
  });

  std::vector<CurvePoint> curve;
  std::size_t i = 0;
  while (i < kept.size()) {
    std::size_t j = i;
    while (j < kept.size() && kept[j].qc == kept[i].qc) ++j;
    CurvePoint p;
    p.qc = kept[i].qc;
    p.count = static_cast<int>(j - i);
    p.min = kept[i].err;
    p.max = kept[j - 1].err;
    const std::size_t n = j - i;
    p.median = n % 2 ? kept[i + n / 2].err
                     : 0.5 * (kept[i + n / 2 - 1].err + kept[i + n / 2].err);
    curve.push_back(p);
    i = j;
  }
  return curve;
}

std::string gate_sweep_csv(const std::vector<GateSweepRow>& rows) {
  std::ostringstream out;
  out << "d,run,err,qc,cc,constant\n";
  for (const GateSweepRow& r : rows)
    out << r.d << ',' << r.run << ',' << fmt(r.err) << ',' << r.qc << ',' << r.cc
        << ',' << int(r.constant) << '\n';
  return out.str();
}

std::vector<GateSweepRow> parse_gate_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "d,run,err,qc,cc,constant")
    throw std::runtime_error("unexpected gate-sweep CSV header");
  std::vector<GateSweepRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    GateSweepRow r;
    int constant = 0;
    std::string spaced = line;
    for (char& c : spaced)
      if (c == ',') c = ' ';
    std::istringstream fields(spaced);
    if (!(fields >> r.d >> r.run >> r.err >> r.qc >> r.cc >> constant))
      throw std::runtime_error("bad gate-sweep CSV row: " + line);
    r.constant = constant != 0;
    rows.push_back(r);
  }
  return rows;
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
  std::ostringstream out;
  out << "qc,median_err,min_err,max_err,count\n";
  for (const CurvePoint& p : points)
    out << p.qc << ',' << fmt(p.median) << ',' << fmt(p.min) << ',' << fmt(p.max)
        << ',' << p.count << '\n';
  return out.str();
}

namespace {

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  return path;
}

}  // namespace

std::vector<std::string> cmd_synth(const ExperimentConfig& config) {
  const BooleanFunction f = config.resolve_function();
  const CouplingMap coupling = config.resolve_coupling();
  const Restriction restriction = config.resolve_restriction(coupling);

  const SynthesisResult result = synthesize(f, config.ea, restriction, &coupling);

  std::vector<std::string> paths;
  paths.push_back(write_file(config.out_dir, "synth_" + f.name + "_circuit.txt",
                             serialize(result.best)));
  paths.push_back(write_file(config.out_dir, "synth_" + f.name + "_result.json",
                             result.to_json() + "\n"));
  return paths;
}

std::vector<std::string> cmd_sweep_gates(const ExperimentConfig& config) {
  if (config.gate_counts.empty())
    throw std::runtime_error("sweep-gates needs a non-empty gate_counts list");
  const BooleanFunction f = config.resolve_function();
  const CouplingMap coupling = config.resolve_coupling();
  const Restriction restriction = config.resolve_restriction(coupling);

  std::filesystem::create_directories(config.out_dir);
  const std::string raw_path =
      (std::filesystem::path(config.out_dir) / "sweep_gates_raw.csv").string();
  std::ofstream raw(raw_path, std::ios::binary);
  if (!raw) throw std::runtime_error("cannot write " + raw_path);
  raw << "d,run,err,qc,cc,constant\n";

  std::vector<GateSweepRow> rows;
  for (int d : config.gate_counts) {
    for (int run = 0; run < config.repetitions; ++run) {
      EAParams params = config.ea;
      params.gates = d;
      params.master_seed = config.ea.master_seed + static_cast<std::uint64_t>(run);
      const SynthesisResult result = synthesize(f, params, restriction);

      // Costs are taken after unused-gate removal; the pruned circuit
      // computes the same outputs, so the exact error carries over.
      const Circuit pruned = remove_unused_gates(result.best, f.m);
      GateSweepRow row;
      row.d = d;
      row.run = run;
      row.err = result.report.err.value();
      row.qc = quantum_cost(pruned, config.cost_table);
      row.cc = circuit_cost(pruned, coupling);
      row.constant = circuit_function(pruned, f.n, f.m).is_constant();
      rows.push_back(row);

      raw << row.d << ',' << row.run << ',' << fmt(row.err) << ',' << row.qc << ','
          << row.cc << ',' << int(row.constant) << '\n';
      raw.flush();  // partial results survive an aborted sweep
    }
  }
  raw.close();

  const std::vector<CurvePoint> curve = aggregate_curve(rows, config.exclude_constant);
  const std::string curve_path =
      write_file(config.out_dir, "sweep_gates_curve.csv", curve_csv(curve));
  return {raw_path, curve_path};
}

std::vector<std::string> cmd_sweep_noise(const ExperimentConfig& config,
                                         const std::vector<std::string>& circuit_files) {
  if (circuit_files.empty())
    throw std::runtime_error("sweep-noise needs at least one circuit file");
  if (config.lambdas.empty())
    throw std::runtime_error("sweep-noise needs a non-empty lambdas list");

  const BooleanFunction f = config.resolve_function();
  const CouplingMap coupling = config.resolve_coupling();

  std::vector<Circuit> circuits;
  std::vector<std::uint64_t> qc, cc;
  for (const std::string& path : circuit_files) {
    circuits.push_back(load_circuit_file(path));
    qc.push_back(quantum_cost(circuits.back(), config.cost_table));
    cc.push_back(circuit_cost(circuits.back(), coupling));
  }

  const std::vector<NoiseSweepRow> rows =
      noise_sweep(circuits, f, config.noise, config.lambdas, config.trials, coupling,
                  config.ea.master_seed, config.ea.threads);

  std::ostringstream out;
  out << "circuit_id,qc,cc,lambda,trials,error_rate,stderr\n";
  for (const NoiseSweepRow& row : rows)
    out << row.circuit_index << ',' << qc[row.circuit_index] << ','
        << cc[row.circuit_index] << ',' << fmt(row.lambda) << ','
        << row.estimate.trials_per_input << ',' << fmt(row.estimate.aggregate) << ','
        << fmt(row.estimate.std_error) << '\n';

  std::vector<std::string> paths;
  paths.push_back(write_file(config.out_dir, "sweep_noise.csv", out.str()));

  if (circuits.size() >= 2) {
    // Crossover between the cheapest and the most expensive circuit:
    // largest swept λ where the cheaper one is strictly more accurate.
    std::size_t cheap = 0, dear = 0;
    for (std::size_t i = 1; i < circuits.size(); ++i) {
      if (qc[i] < qc[cheap]) cheap = i;
      if (qc[i] > qc[dear]) dear = i;
    }
    auto error_at = [&](std::size_t circuit, std::size_t lambda_idx) {
      return rows[circuit * config.lambdas.size() + lambda_idx].estimate.aggregate;
    };
    std::optional<double> crossover;
    for (std::size_t s = 0; s < config.lambdas.size(); ++s)
      if (error_at(cheap, s) < error_at(dear, s))
        if (!crossover || config.lambdas[s] > *crossover)
          crossover = config.lambdas[s];

    std::ostringstream cx;
    cx << "cheap_circuit_id,expensive_circuit_id,lambda_crossover\n";
    cx << cheap << ',' << dear << ','
       << (crossover ? fmt(*crossover) : std::string("none")) << '\n';
    paths.push_back(write_file(config.out_dir, "crossover.csv", cx.str()));
  }
  return paths;
}

}  // namespace revsyn
