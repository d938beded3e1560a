#pragma once

#include <cstdint>

#include "qsd/optimality.hpp"

namespace qsd {

struct SolverConfig {
  std::size_t max_iterations = 5000;
  double convergence_tol = 1e-10;  // max-norm element change per sweep
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
};

struct SolverResult {
  Pom pom;
  double error_probability = 1.0;
  std::size_t iterations = 0;
  bool converged = false;
  OptimalityReport optimality;
};

// Closed-form two-hypothesis measurement from the spectrum of
// p0 rho0 - p1 rho1; directions within zero_tol of the kernel are assigned
// to the higher-prior outcome (lower index on a prior tie). The reported
// error is evaluated through error_probability, not a formula, so this
// stays independent of the evaluator it cross-checks.
SolverResult helstrom_two_state(const Ensemble& e, const Tolerances& tol = {});

// Fixed-point iteration on the POM elements, run from a uniform start and
// from seeded random starts, with every guessing measurement included as a
// baseline candidate. Deterministic for a given config. Returns the best
// measurement found; throws SolverError if no run yields a valid POM.
SolverResult optimize_min_error(const Ensemble& e, const SolverConfig& cfg = {},
                                const Tolerances& tol = {});

// Exhaustive scan over qubit orthonormal-basis measurements (grid in polar
// and azimuthal angles, all assignments of hypotheses to the two outcomes,
// all guessing measurements). A structurally independent low-tech oracle;
// dimension 2 only, guaranteed at least as good as guessing.
SolverResult brute_force_projective(const Ensemble& e, std::size_t grid_steps,
                                    const Tolerances& tol = {});

}  // namespace qsd
