#pragma once

#include <cstdint>
#include <vector>

#include "revsyn/circuit.hpp"
#include "revsyn/cost.hpp"
#include "revsyn/rng.hpp"
#include "revsyn/truth_table.hpp"

namespace revsyn {

/// Classical stochastic gate-fault model. A faulting gate either replaces
/// the bits on its lines with uniform random bits (depolarizing analogue,
/// the default) or flips them (bit-flip channel). All probabilities are
/// scaled by the global factor λ and clamped to [0,1].
struct NoiseModel {
  double p1 = 0.001;    // per 1-qubit primitive
  double p2 = 0.01;     // per 2-qubit primitive
  double p_meas = 0.02; // per-line readout flip
  double scale = 1.0;   // λ

  enum class Channel { Depolarizing, BitFlip };
  Channel channel = Channel::Depolarizing;

  double effective(double p) const {
    const double v = scale * p;
    return v > 1.0 ? 1.0 : v;
  }

  NoiseModel scaled(double lambda) const {
    NoiseModel m = *this;
    m.scale = lambda;
    return m;
  }
};

struct NoisyEstimate {
  std::uint64_t trials_per_input = 0;
  std::uint64_t total_trials = 0;
  std::uint64_t failures = 0;
  double aggregate = 0;  // mean disagreement frequency
  double std_error = 0;
  std::vector<double> per_input_error;
};

/// One noisy trajectory of a decomposed circuit.
std::uint32_t noisy_run_once_mask(const PrimitiveCircuit& primitive,
                                  std::uint32_t input, int measured_lines,
                                  const NoiseModel& noise, Rng& rng);
BitState noisy_run_once(const PrimitiveCircuit& primitive, const BitState& input,
                        const NoiseModel& noise, Rng& rng);

/// Decomposes once and Monte-Carlo-evaluates the circuit against f over
/// all 2^n inputs, T trials each. Deterministic for a fixed seed: trial
/// blocks carry their own (seed, input, block) RNG streams, so the thread
/// count never changes the estimate.
NoisyEstimate noisy_error_rate(const Circuit& circuit, const BooleanFunction& f,
                               const NoiseModel& noise, std::uint64_t trials,
                               const CouplingMap& coupling, std::uint64_t seed,
                               int threads = 1);

struct NoiseSweepRow {
  std::size_t circuit_index = 0;
  double lambda = 0;
  NoisyEstimate estimate;
};

std::vector<NoiseSweepRow> noise_sweep(const std::vector<Circuit>& circuits,
                                       const BooleanFunction& f,
                                       const NoiseModel& base,
                                       const std::vector<double>& scales,
                                       std::uint64_t trials,
                                       const CouplingMap& coupling,
                                       std::uint64_t seed, int threads = 1);

}  // namespace revsyn
