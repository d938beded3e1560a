#include "qsd/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "qsd/json_io.hpp"
#include "qsd/rng.hpp"

namespace qsd {

namespace {

constexpr double kUnitNormTol = 1e-9;
constexpr double kColumnSumTol = 1e-8;
constexpr std::size_t kBlockTrials = 1 << 14;

void require_valid_spec(const ChannelSpec& spec) {
  if (spec.dim < 1) throw ValidationError("channel: dimension must be >= 1");
  if (spec.signals.empty()) throw ValidationError("channel: at least one signal state required");
  if (!(spec.failure_prob >= 0.0 && spec.failure_prob <= 1.0)) {
    throw ValidationError("channel: failure_prob must lie in [0, 1]");
  }
  for (std::size_t k = 0; k < spec.signals.size(); ++k) {
    if (spec.signals[k].size() != spec.dim) {
      throw ValidationError("channel: signal " + std::to_string(k) +
                            " has dimension " + std::to_string(spec.signals[k].size()));
    }
    const double norm = spec.signals[k].norm();
    if (std::abs(norm - 1.0) > kUnitNormTol) {
      throw ValidationError("channel: signal " + std::to_string(k) +
                            " has norm " + std::to_string(norm));
    }
  }
}

// Inverse-CDF draw from a short cumulative table; the final bucket absorbs
// rounding slack in the total.
std::size_t draw_index(const std::vector<double>& cumulative, double u) {
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) {
    if (u < cumulative[i]) return i;
  }
  return cumulative.size() - 1;
}

struct BlockTally {
  std::size_t errors = 0;
};

BlockTally run_block(const std::vector<double>& prior_cum,
                     const std::vector<std::vector<double>>& outcome_cum,
                     std::size_t trials, std::uint64_t block_seed) {
  Prng prng(block_seed);
  BlockTally tally;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t hypothesis = draw_index(prior_cum, prng.uniform());
    const std::size_t outcome = draw_index(outcome_cum[hypothesis], prng.uniform());
    if (outcome != hypothesis) ++tally.errors;
  }
  return tally;
}

}  // namespace

Ensemble build_ensemble(const ChannelSpec& spec, const Tolerances& tol) {
  require_valid_spec(spec);

  Ensemble e;
  e.dim = spec.dim;
  e.members.push_back({spec.failure_prob, maximally_mixed(spec.dim)});
  const double signal_prior =
      (1.0 - spec.failure_prob) / static_cast<double>(spec.num_signals());
  for (const Vec& signal : spec.signals) {
    e.members.push_back({signal_prior, make_pure(signal)});
  }

  const ValidationReport report = validate_ensemble(e, tol);
  if (!report.valid) {
    throw ValidationError("build_ensemble: " + summarize(report));
  }
  return e;
}

double no_measurement_threshold(Eigen::Index dim, std::size_t num_signals) {
  if (dim < 1) throw ContractError("no_measurement_threshold: dimension must be >= 1");
  if (num_signals < 1) throw ContractError("no_measurement_threshold: signal count must be >= 1");
  return static_cast<double>(dim) / static_cast<double>(dim + static_cast<Eigen::Index>(num_signals));
}

bool check_simple_condition(const Ensemble& e, std::size_t j, const Tolerances& tol) {
  if (j >= e.size()) throw ContractError("check_simple_condition: index out of range");
  const Mat& rho = e.members[j].state.matrix;
  const double deviation =
      max_norm(rho - Mat::Identity(e.dim, e.dim) / static_cast<double>(e.dim));
  if (deviation > tol.psd_tol) {
    throw ContractError("check_simple_condition: member " + std::to_string(j) +
                        " deviates from the maximally mixed state by " +
                        std::to_string(deviation));
  }
  const double lhs = e.members[j].prior / static_cast<double>(e.dim);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k == j) continue;
    if (lhs < e.members[k].prior - tol.psd_tol) return false;
  }
  return true;
}

ChannelSpec trine_example(double failure_prob) {
  if (!(failure_prob >= 0.0 && failure_prob <= 1.0)) {
    throw ValidationError("trine_example: failure_prob must lie in [0, 1]");
  }
  ChannelSpec spec;
  spec.dim = 2;
  spec.failure_prob = failure_prob;
  for (int k = 0; k < 3; ++k) {
    const double angle = static_cast<double>(k) * std::numbers::pi / 3.0;
    Vec v(2);
    v << Complex(std::cos(angle), 0.0), Complex(std::sin(angle), 0.0);
    spec.signals.push_back(v);
  }
  return spec;
}

SimResult simulate(const Ensemble& e, const Pom& pom, std::size_t trials,
                   std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw ContractError("simulate: trials must be >= 1");
  const OutcomeTable table = outcome_table(pom, e);
  const std::size_t n = e.size();

  std::vector<double> prior_cum(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += e.members[j].prior;
    prior_cum[j] = acc;
  }

  std::vector<std::vector<double>> outcome_cum(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sum += table.p_cond(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
      outcome_cum[j][k] = sum;
    }
    if (std::abs(sum - 1.0) > kColumnSumTol) {
      std::ostringstream msg;
      msg << "simulate: outcome probabilities for hypothesis " << j << " sum to "
          << sum << " (deviation " << std::abs(sum - 1.0) << " > " << kColumnSumTol
          << "); refusing to sample";
      throw SimulationError(msg.str());
    }
  }

  const std::size_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<std::size_t> block_errors(blocks, 0);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      const std::size_t count =
          std::min(kBlockTrials, trials - b * kBlockTrials);
      block_errors[b] =
          run_block(prior_cum, outcome_cum, count, derive_seed(seed, b)).errors;
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    run_range(0, blocks);
  } else {
    std::vector<std::thread> pool;
    const std::size_t per_worker = (blocks + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * per_worker;
      const std::size_t end = std::min(blocks, begin + per_worker);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  SimResult result;
  result.trials = trials;
  for (const std::size_t errs : block_errors) result.strategy_errors += errs;
  result.empirical_error =
      static_cast<double>(result.strategy_errors) / static_cast<double>(trials);
  result.guess_baseline = 1.0 - max_prior(e);
  result.seed = seed;
  return result;
}

ChannelSpec parse_channel_file(const std::filesystem::path& path) {
  return channel_from_json(read_json_file(path));
}

ChannelSpec load_channel_spec(const std::filesystem::path& path) {
  ChannelSpec spec = parse_channel_file(path);
  require_valid_spec(spec);
  return spec;
}

void save_channel_spec(const ChannelSpec& spec, const std::filesystem::path& path) {
  write_json_file(channel_to_json(spec), path);
}

}  // namespace qsd
