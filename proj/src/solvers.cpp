#include "qsd/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qsd/rng.hpp"

namespace qsd {

namespace {

constexpr double kResultSlack = 10.0;  // result validity gate vs stated tolerances

Tolerances scaled(const Tolerances& tol, double factor) {
  Tolerances out = tol;
  out.herm_tol *= factor;
  out.psd_tol *= factor;
  out.trace_tol *= factor;
  return out;
}

struct Candidate {
  Pom pom;
  double error = 1.0;
  std::size_t iterations = 0;
  bool converged = true;
};

Mat random_ginibre(Prng& prng, Eigen::Index dim) {
  Mat g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = prng.complex_normal();
  return g;
}

// Random valid POM: normalize a set of random PSD operators by the inverse
// square root of their sum.
std::vector<Mat> random_pom_elements(Prng& prng, Eigen::Index dim, std::size_t n,
                                     double kernel_cutoff) {
  std::vector<Mat> raw(n);
  Mat sum = Mat::Zero(dim, dim);
  for (auto& a : raw) {
    const Mat g = random_ginibre(prng, dim);
    a = g * g.adjoint();
    sum += a;
  }
  const InverseSqrt s = psd_inverse_sqrt(sum, kernel_cutoff);
  std::vector<Mat> elements(n);
  for (std::size_t k = 0; k < n; ++k) {
    elements[k] = hermitian_part(s.inv_sqrt * raw[k] * s.inv_sqrt) +
                  s.kernel_projector / static_cast<double>(n);
  }
  return elements;
}

// One fixed-point run. The update conjugates each element by the inverse
// square root of the current Lagrangian-like operator; completeness lost to
// the kernel is restored by spreading the kernel projector evenly over the
// outcomes, which keeps every iterate a valid POM.
Candidate iterate_fixed_point(const Ensemble& e, std::vector<Mat> elements,
                              const SolverConfig& cfg, const Tolerances& tol) {
  const std::size_t n = e.size();
  const Eigen::Index dim = e.dim;

  std::vector<Mat> weighted(n);
  for (std::size_t k = 0; k < n; ++k) {
    weighted[k] = hermitian_part(e.members[k].prior * e.members[k].state.matrix);
  }

  Candidate out;
  out.converged = false;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    Mat lambda = Mat::Zero(dim, dim);
    for (std::size_t k = 0; k < n; ++k) {
      lambda += weighted[k] * elements[k] * weighted[k];
    }
    const InverseSqrt s = psd_inverse_sqrt(hermitian_part(lambda), tol.zero_tol);

    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      Mat next = hermitian_part(s.inv_sqrt * weighted[k] * elements[k] * weighted[k] * s.inv_sqrt) +
                 s.kernel_projector / static_cast<double>(n);
      change = std::max(change, max_norm(next - elements[k]));
      elements[k] = std::move(next);
    }
    out.iterations = it;
    if (change <= cfg.convergence_tol) {
      out.converged = true;
      break;
    }
  }

  out.pom = Pom{dim, std::move(elements)};
  return out;
}

}  // namespace

SolverResult helstrom_two_state(const Ensemble& e, const Tolerances& tol) {
  if (e.size() != 2) {
    throw ContractError("helstrom_two_state: ensemble must have exactly 2 members");
  }
  {
    const ValidationReport report = validate_ensemble(e, tol);
    if (!report.valid) {
      throw ValidationError("helstrom_two_state: " + summarize(report));
    }
  }

  const Mat difference = hermitian_part(e.members[0].prior * e.members[0].state.matrix -
                                        e.members[1].prior * e.members[1].state.matrix);
  const Eigendecomposition eig = eig_hermitian(difference);

  // Kernel directions carry no preference; send them to the higher-prior
  // outcome (index 0 on a tie).
  const std::size_t tie_outcome = e.members[0].prior >= e.members[1].prior ? 0 : 1;
  Mat positive = Mat::Zero(e.dim, e.dim);
  Mat negative = Mat::Zero(e.dim, e.dim);
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const Mat outer = eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    if (eig.values(i) > tol.zero_tol) {
      positive += outer;
    } else if (eig.values(i) < -tol.zero_tol) {
      negative += outer;
    } else if (tie_outcome == 0) {
      positive += outer;
    } else {
      negative += outer;
    }
  }

  SolverResult result;
  result.pom = Pom{e.dim, {positive, negative}};
  result.error_probability = error_probability(result.pom, e);
  result.iterations = 0;
  result.converged = true;
  result.optimality = check_min_error(result.pom, e, tol);
  return result;
}

SolverResult optimize_min_error(const Ensemble& e, const SolverConfig& cfg,
                                const Tolerances& tol) {
  if (cfg.max_iterations < 1) throw ContractError("optimize_min_error: max_iterations must be >= 1");
  if (!(cfg.convergence_tol > 0.0)) throw ContractError("optimize_min_error: convergence_tol must be > 0");
  {
    const ValidationReport report = validate_ensemble(e, tol);
    if (!report.valid) {
      throw ValidationError("optimize_min_error: " + summarize(report));
    }
  }

  const std::size_t n = e.size();
  const Eigen::Index dim = e.dim;
  std::vector<Candidate> candidates;

  // Guessing baselines; these are exact POMs, so the guessing error rate is
  // always reachable.
  for (std::size_t j = 0; j < n; ++j) {
    Candidate c;
    c.pom = guess_pom(j, n, dim);
    c.error = error_probability(c.pom, e);
    candidates.push_back(std::move(c));
  }

  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    std::vector<Mat> start;
    if (r == 0) {
      start.assign(n, Mat::Identity(dim, dim) / static_cast<double>(n));
    } else {
      Prng prng = Prng::derive(cfg.seed, r);
      start = random_pom_elements(prng, dim, n, tol.zero_tol);
    }
    Candidate c = iterate_fixed_point(e, std::move(start), cfg, tol);
    c.error = error_probability(c.pom, e);
    candidates.push_back(std::move(c));
  }

  // Deterministic reduction: lowest error wins, earlier candidate on ties.
  const Tolerances gate = scaled(tol, kResultSlack);
  const Candidate* best = nullptr;
  std::size_t invalid = 0;
  for (const Candidate& c : candidates) {
    if (!validate_pom(c.pom, gate).valid) {
      ++invalid;
      continue;
    }
    if (best == nullptr || c.error < best->error) best = &c;
  }
  if (best == nullptr) {
    std::ostringstream msg;
    msg << "optimize_min_error: no run produced a valid POM (" << invalid
        << " invalid candidates, seed " << cfg.seed << ", restarts "
        << cfg.restarts << ")";
    throw SolverError(msg.str());
  }

  SolverResult result;
  result.pom = best->pom;
  result.error_probability = best->error;
  result.iterations = best->iterations;
  result.converged = best->converged;
  result.optimality = check_min_error(result.pom, e, tol);
  return result;
}

SolverResult brute_force_projective(const Ensemble& e, std::size_t grid_steps,
                                    const Tolerances& tol) {
  if (e.dim != 2) throw ContractError("brute_force_projective: qubit ensembles only");
  if (grid_steps < 8) throw ContractError("brute_force_projective: grid_steps must be >= 8");
  {
    const ValidationReport report = validate_ensemble(e, tol);
    if (!report.valid) {
      throw ValidationError("brute_force_projective: " + summarize(report));
    }
  }

  const std::size_t n = e.size();
  std::size_t evaluated = 0;

  // Best guessing strategy as the baseline.
  std::size_t best_guess = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (e.members[j].prior > e.members[best_guess].prior) best_guess = j;
  }
  Pom best_pom = guess_pom(best_guess, n, 2);
  double best_error = error_probability(best_pom, e);
  evaluated += n;

  const double pi = std::numbers::pi;
  for (std::size_t a = 0; a < grid_steps; ++a) {
    const double theta = pi * static_cast<double>(a) / static_cast<double>(grid_steps - 1);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    for (std::size_t b = 0; b < grid_steps; ++b) {
      const double phi = 2.0 * pi * static_cast<double>(b) / static_cast<double>(grid_steps);
      const Complex phase(std::cos(phi), std::sin(phi));
      Vec u(2), v(2);
      u << Complex(c, 0.0), phase * s;
      v << Complex(-s, 0.0), phase * c;

      // Correct-assignment probabilities for each hypothesis under either
      // projector, evaluated once per basis.
      std::vector<double> q_u(n), q_v(n);
      for (std::size_t j = 0; j < n; ++j) {
        const Mat& rho = e.members[j].state.matrix;
        q_u[j] = u.dot(rho * u).real();
        q_v[j] = v.dot(rho * v).real();
      }

      for (std::size_t h0 = 0; h0 < n; ++h0) {
        for (std::size_t h1 = 0; h1 < n; ++h1) {
          if (h0 == h1) continue;
          ++evaluated;
          const double correct = e.members[h0].prior * q_u[h0] + e.members[h1].prior * q_v[h1];
          const double err = 1.0 - correct;
          if (err < best_error) {
            best_error = err;
            Pom pom;
            pom.dim = 2;
            pom.elements.assign(n, Mat::Zero(2, 2));
            pom.elements[h0] = u * u.adjoint();
            pom.elements[h1] = v * v.adjoint();
            best_pom = std::move(pom);
          }
        }
      }
    }
  }

  SolverResult result;
  result.pom = std::move(best_pom);
  result.error_probability = error_probability(result.pom, e);
  result.iterations = evaluated;
  result.converged = true;
  result.optimality = check_min_error(result.pom, e, tol);
  return result;
}

}  // namespace qsd
