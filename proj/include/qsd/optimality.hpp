#pragma once

#include <vector>

#include "qsd/measurement.hpp"

namespace qsd {

// Diagnostics of the minimum-error conditions for a given measurement.
// "Sufficient" requires the Lagrangian operator to be Hermitian with
// lagrangian - p_k rho_k PSD for every k; "necessary" requires the
// stationarity products (lagrangian - p_k rho_k) element_k to vanish.
// Margins and residuals are always carried: boundary ensembles sit exactly
// at zero margin and a bare boolean would hide that.
struct OptimalityReport {
  Mat lagrangian;
  double hermiticity_residual = 0.0;
  std::vector<double> per_k_min_eigenvalue;          // of herm(lagrangian) - p_k rho_k
  std::vector<double> per_k_stationarity_residual;   // max-norm of (lagrangian - p_k rho_k) element_k
  bool satisfied_sufficient = false;
  bool satisfied_necessary = false;
};

struct NoMeasurementMargin {
  std::size_t k = 0;
  double min_eigenvalue = 0.0;  // of p_j rho_j - p_k rho_k
};

// Verdict on whether consistently guessing hypothesis candidate_j is a
// minimum-error strategy for the ensemble.
struct NoMeasurementReport {
  std::size_t candidate_j = 0;
  std::vector<std::size_t> candidates_tested;
  std::vector<NoMeasurementMargin> per_k_min_eigenvalue;  // k != candidate_j
  bool prior_condition = false;  // candidate prior >= every other prior
  bool span_condition = false;   // candidate support contains every other support
  bool satisfied = false;
  double margin = 0.0;  // min over k of per_k_min_eigenvalue
};

struct PureStateCheck {
  std::size_t k = 0;
  double lhs = 0.0;  // p_j <psi_k| rho_j |psi_k>
  double rhs = 0.0;  // p_k
  bool ok = false;
};

struct MixedComponentCheck {
  std::size_t k = 0;
  std::size_t component = 0;
  double weight = 0.0;
  double lhs = 0.0;  // p_j <phi_i| rho_j |phi_i>
  double rhs = 0.0;  // p_k * weight
  bool ok = false;
};

// sum_j p_j element_j rho_j, products in that order. Hermiticity is NOT
// assumed; for non-optimal measurements the residual is a diagnostic and is
// measured downstream.
Mat lagrangian_operator(const Pom& pom, const Ensemble& e);

OptimalityReport check_min_error(const Pom& pom, const Ensemble& e, const Tolerances& tol = {});

// Tests every prior-maximizing index (ties within zero_tol); reports the
// lowest-index passer, or the lowest-index candidate when none passes.
NoMeasurementReport check_no_measurement(const Ensemble& e, const Tolerances& tol = {});

// Per-hypothesis scalar form of the no-measurement condition when every
// member k != j is pure. Throws ContractError naming the first non-pure
// member when the precondition fails.
std::vector<PureStateCheck> check_pure_state_condition(const Ensemble& e, std::size_t j,
                                                       const Tolerances& tol = {});

// Per-eigencomponent checks for mixed members. These are necessary
// conditions only; the authoritative verdict remains check_no_measurement.
std::vector<MixedComponentCheck> check_mixed_decomposition_condition(
    const Ensemble& e, std::size_t j, const Tolerances& tol = {});

inline bool all_ok(const std::vector<PureStateCheck>& checks) {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

inline bool all_ok(const std::vector<MixedComponentCheck>& checks) {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

}  // namespace qsd
