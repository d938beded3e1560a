#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "qsd/measurement.hpp"

namespace qsd {

// Failed-transmission channel: N equally likely pure signal states, plus a
// failure branch that delivers the maximally mixed state with probability
// failure_prob.
struct ChannelSpec {
  Eigen::Index dim = 0;
  std::vector<Vec> signals;
  double failure_prob = 0.0;
  std::size_t num_signals() const { return signals.size(); }
};

struct SimResult {
  std::size_t trials = 0;
  std::size_t strategy_errors = 0;
  double empirical_error = 0.0;
  double guess_baseline = 0.0;  // 1 - max prior
  std::uint64_t seed = 0;
};

// Member 0 is the failure hypothesis (maximally mixed, prior failure_prob);
// members 1..N are the signals, each with prior (1 - failure_prob)/N.
Ensemble build_ensemble(const ChannelSpec& spec, const Tolerances& tol = {});

// dim/(dim + num_signals): the failure probability at or above which no
// measurement distinguishes the hypotheses better than always guessing
// "failed".
double no_measurement_threshold(Eigen::Index dim, std::size_t num_signals);

// Scalar shortcut p_j/dim >= p_k for all k != j; valid only when member j is
// maximally mixed (checked, ContractError otherwise). Agrees with
// check_no_measurement on such ensembles.
bool check_simple_condition(const Ensemble& e, std::size_t j, const Tolerances& tol = {});

// Three equatorial qubit signal states 120 degrees apart on the Bloch
// sphere.
ChannelSpec trine_example(double failure_prob);

// Seeded Monte Carlo of the decision strategy: draw a hypothesis from the
// priors, draw an outcome from the measurement statistics, count an error
// when they differ. Trials are partitioned into fixed blocks with per-block
// derived seeds, so the tallies are identical for any worker count.
SimResult simulate(const Ensemble& e, const Pom& pom, std::size_t trials,
                   std::uint64_t seed, unsigned threads = 1);

ChannelSpec parse_channel_file(const std::filesystem::path& path);
ChannelSpec load_channel_spec(const std::filesystem::path& path);
void save_channel_spec(const ChannelSpec& spec, const std::filesystem::path& path);

}  // namespace qsd
