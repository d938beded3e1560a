#pragma once

#include <filesystem>
#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

// A measurement given by its probability operators, one element per
// hypothesis: outcome k means "assign hypothesis k". Valid instances have
// Hermitian PSD elements summing to the identity.
struct Pom {
  Eigen::Index dim = 0;
  std::vector<Mat> elements;
  std::size_t size() const { return elements.size(); }
};

// Conditional, marginal and posterior outcome statistics of a measurement
// over an ensemble.
struct OutcomeTable {
  RealMat p_cond;      // P(outcome k | hypothesis j); row k, column j
  RealVec p_marginal;  // P(outcome k)
  // P(hypothesis j | outcome k); row j, column k. Columns with marginal
  // probability <= zero_tol are undefined (NaN-filled) rather than
  // zero-filled: Bayes rule does not apply there.
  RealMat posterior;
  std::vector<bool> posterior_defined;
};

ValidationReport validate_pom(const Pom& pom, const Tolerances& tol = {});

// Re tr(element_k rho); throws if the imaginary residual exceeds 1e-9.
double outcome_probability(const Pom& pom, std::size_t k, const DensityMatrix& rho);

OutcomeTable outcome_table(const Pom& pom, const Ensemble& e, const Tolerances& tol = {});

// Probability that the assigned hypothesis is wrong.
double error_probability(const Pom& pom, const Ensemble& e);

// The consistent-guessing measurement: element j is the identity, every other
// element the zero matrix. Satisfies the POM constraints exactly.
Pom guess_pom(std::size_t j, std::size_t n, Eigen::Index dim);

// Shannon mutual information between hypothesis and outcome, in bits.
// Exactly zero when every positive-prior hypothesis induces the same outcome
// distribution (in particular for any guessing measurement).
double mutual_information(const Pom& pom, const Ensemble& e, const Tolerances& tol = {});

Pom parse_pom_file(const std::filesystem::path& path);
Pom load_pom(const std::filesystem::path& path, const Tolerances& tol = {});
void save_pom(const Pom& pom, const std::filesystem::path& path);

}  // namespace qsd
