#include "revsyn/noise.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace revsyn {

namespace {

constexpr std::uint64_t kNoiseStream = 7;
constexpr std::uint64_t kTrialBlock = 256;  // trials per RNG stream, fixed

}  // namespace

std::uint32_t noisy_run_once_mask(const PrimitiveCircuit& primitive,
                                  std::uint32_t input, int measured_lines,
                                  const NoiseModel& noise, Rng& rng) {
  const double fault1 = noise.effective(noise.p1);
  const double fault2 = noise.effective(noise.p2);
  const double flip = noise.effective(noise.p_meas);
  std::uint32_t s = input;

  for (const PrimitiveGate& g : primitive.gates) {
    switch (g.action) {
      case PrimitiveGate::Action::Noop:
        break;
      case PrimitiveGate::Action::Not:
        s ^= 1u << (g.lines[0] - 1);
        break;
      case PrimitiveGate::Action::Cnot:
        s ^= ((s >> (g.lines[0] - 1)) & 1u) << (g.lines[1] - 1);
        break;
      case PrimitiveGate::Action::Toffoli:
        s ^= (((s >> (g.lines[0] - 1)) & (s >> (g.lines[1] - 1))) & 1u)
             << (g.lines[2] - 1);
        break;
    }
    if (g.hw == PrimitiveGate::Hw::Virtual) continue;

    const double p = g.hw == PrimitiveGate::Hw::OneQubit ? fault1 : fault2;
    if (p > 0 && rng.uniform01() < p) {
      const int touched = g.hw == PrimitiveGate::Hw::OneQubit ? 1 : 2;
      if (noise.channel == NoiseModel::Channel::Depolarizing) {
        const std::uint64_t r = rng.next();
        for (int i = 0; i < touched; ++i) {
          const std::uint32_t m = 1u << (g.noise_lines[std::size_t(i)] - 1);
          s = ((r >> i) & 1u) ? (s | m) : (s & ~m);
        }
      } else {
        for (int i = 0; i < touched; ++i)
          s ^= 1u << (g.noise_lines[std::size_t(i)] - 1);
      }
    }
  }

  if (flip > 0) {
    for (int line = 1; line <= measured_lines; ++line)
      if (rng.uniform01() < flip) s ^= 1u << (line - 1);
  }
  return s;
}

BitState noisy_run_once(const PrimitiveCircuit& primitive, const BitState& input,
                        const NoiseModel& noise, Rng& rng) {
  return BitState(
      noisy_run_once_mask(primitive, input.bits, input.width, noise, rng),
      input.width);
}

NoisyEstimate noisy_error_rate(const Circuit& circuit, const BooleanFunction& f,
                               const NoiseModel& noise, std::uint64_t trials,
                               const CouplingMap& coupling, std::uint64_t seed,
                               int threads) {
  validate_function(f);
  if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
  const std::uint64_t inputs = f.input_count();
  if (inputs * trials > (std::uint64_t(1) << 34))
    throw std::invalid_argument("2^n * T too large for Monte-Carlo evaluation");

  const PrimitiveCircuit primitive = decompose(circuit, coupling);
  const int l = circuit.line_count;

  NoisyEstimate est;
  est.trials_per_input = trials;
  est.total_trials = inputs * trials;
  est.per_input_error.resize(static_cast<std::size_t>(inputs));

  std::vector<std::uint64_t> failures_per_input(static_cast<std::size_t>(inputs), 0);

  auto run_inputs = [&](std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t x = begin; x < end; ++x) {
      const std::uint32_t embedded = embed_value_mask(x, f.n);
      const std::uint32_t want = f.table[x];
      std::uint64_t failures = 0;
      for (std::uint64_t block = 0; block * kTrialBlock < trials; ++block) {
        Rng rng = derive_stream(seed, kNoiseStream, x, block);
        const std::uint64_t in_block =
            std::min(kTrialBlock, trials - block * kTrialBlock);
        for (std::uint64_t t = 0; t < in_block; ++t) {
          const std::uint32_t out =
              noisy_run_once_mask(primitive, embedded, l, noise, rng);
          failures += read_output_value(out, l, f.m) != want;
        }
      }
      failures_per_input[x] = failures;
    }
  };

  if (threads <= 1 || inputs == 1) {
    run_inputs(0, static_cast<std::uint32_t>(inputs));
  } else {
    const std::uint32_t chunk = static_cast<std::uint32_t>(
        (inputs + static_cast<std::uint64_t>(threads) - 1) /
        static_cast<std::uint64_t>(threads));
    std::vector<std::future<void>> workers;
    for (std::uint32_t begin = 0; begin < inputs; begin += chunk)
      workers.push_back(std::async(
          std::launch::async, run_inputs, begin,
          std::min<std::uint32_t>(begin + chunk, static_cast<std::uint32_t>(inputs))));
    for (auto& w : workers) w.get();
  }

  for (std::uint32_t x = 0; x < inputs; ++x) {
    est.failures += failures_per_input[x];
    est.per_input_error[x] =
        static_cast<double>(failures_per_input[x]) / static_cast<double>(trials);
  }
  est.aggregate =
      static_cast<double>(est.failures) / static_cast<double>(est.total_trials);
  est.std_error = std::sqrt(est.aggregate * (1.0 - est.aggregate) /
                            static_cast<double>(est.total_trials));
  return est;
}

std::vector<NoiseSweepRow> noise_sweep(const std::vector<Circuit>& circuits,
                                       const BooleanFunction& f,
                                       const NoiseModel& base,
                                       const std::vector<double>& scales,
                                       std::uint64_t trials,
                                       const CouplingMap& coupling,
                                       std::uint64_t seed, int threads) {
  if (circuits.empty() || scales.empty())
    throw std::invalid_argument("noise sweep needs circuits and scales");
  std::vector<NoiseSweepRow> rows;
  rows.reserve(circuits.size() * scales.size());
  for (std::size_t c = 0; c < circuits.size(); ++c) {
    for (std::size_t s = 0; s < scales.size(); ++s) {
      NoiseSweepRow row;
      row.circuit_index = c;
      row.lambda = scales[s];
      // The same seed serves every circuit so circuits with identical
      // primitive form get identical columns.
      row.estimate = noisy_error_rate(circuits[c], f, base.scaled(scales[s]),
                                      trials, coupling, mix64(seed + s), threads);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace revsyn
