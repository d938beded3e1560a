#include "qsd/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qsd/json_io.hpp"

namespace qsd {

namespace {

constexpr double kImagTol = 1e-9;
constexpr double kRangeTol = 1e-9;

void require_matching(const Pom& pom, const Ensemble& e) {
  if (pom.size() != e.size()) {
    throw DimensionError("POM has " + std::to_string(pom.size()) +
                         " elements for " + std::to_string(e.size()) +
                         " hypotheses");
  }
  if (pom.dim != e.dim) {
    throw DimensionError("POM dimension " + std::to_string(pom.dim) +
                         " does not match ensemble dimension " +
                         std::to_string(e.dim));
  }
}

double real_trace_product(const Mat& a, const Mat& b, const char* what) {
  const Complex t = trace_product(a, b);
  if (std::abs(t.imag()) > kImagTol) {
    std::ostringstream msg;
    msg << what << ": imaginary trace residual " << t.imag();
    throw ContractError(msg.str());
  }
  return t.real();
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

ValidationReport validate_pom(const Pom& pom, const Tolerances& tol) {
  ValidationReport report;
  auto add = [&report](std::optional<std::size_t> member, std::string kind,
                       double residual, std::string message) {
    report.valid = false;
    report.violations.push_back(
        {member, std::move(kind), residual, std::move(message)});
  };

  if (pom.elements.empty()) {
    add(std::nullopt, "element_count", 1.0, "POM has no elements");
    return report;
  }
  if (pom.dim < 1) {
    add(std::nullopt, "dimension", 0.0, "POM dimension must be >= 1");
    return report;
  }

  Mat sum = Mat::Zero(pom.dim, pom.dim);
  bool sum_usable = true;
  for (std::size_t k = 0; k < pom.elements.size(); ++k) {
    const Mat& el = pom.elements[k];
    const std::string at = "element " + std::to_string(k);
    if (el.rows() != el.cols() || el.rows() != pom.dim) {
      add(k, "dimension", 0.0, at + ": wrong shape");
      sum_usable = false;
      continue;
    }
    if (!el.allFinite()) {
      add(k, "finite", 0.0, at + ": non-finite entries");
      sum_usable = false;
      continue;
    }
    const double herm = hermiticity_residual(el);
    if (herm > tol.herm_tol) {
      add(k, "hermiticity", herm, at + ": Hermiticity residual " + std::to_string(herm));
    }
    const double min_eig = eig_hermitian(hermitian_part(el)).values(0);
    if (min_eig < -tol.psd_tol) {
      add(k, "psd", -min_eig, at + ": minimum eigenvalue " + std::to_string(min_eig));
    }
    sum += el;
  }

  if (sum_usable) {
    const double completeness = max_norm(sum - Mat::Identity(pom.dim, pom.dim));
    if (completeness > tol.herm_tol) {
      add(std::nullopt, "completeness", completeness,
          "elements sum deviates from identity by " + std::to_string(completeness));
    }
  }
  return report;
}

double outcome_probability(const Pom& pom, std::size_t k, const DensityMatrix& rho) {
  if (k >= pom.size()) {
    throw ContractError("outcome_probability: index " + std::to_string(k) +
                        " out of range for " + std::to_string(pom.size()) +
                        " elements");
  }
  if (rho.dim() != pom.dim || rho.matrix.rows() != rho.matrix.cols()) {
    throw DimensionError("outcome_probability: state/POM dimension mismatch");
  }
  return real_trace_product(pom.elements[k], rho.matrix, "outcome_probability");
}

OutcomeTable outcome_table(const Pom& pom, const Ensemble& e, const Tolerances& tol) {
  require_matching(pom, e);
  const auto n = static_cast<Eigen::Index>(e.size());

  OutcomeTable table;
  table.p_cond.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double p = real_trace_product(pom.elements[static_cast<std::size_t>(k)],
                                          e.members[static_cast<std::size_t>(j)].state.matrix,
                                          "outcome_table");
      if (p < -kRangeTol || p > 1.0 + kRangeTol) {
        std::ostringstream msg;
        msg << "outcome_table: P(" << k << "|" << j << ") = " << p
            << " outside [0, 1]";
        throw ContractError(msg.str());
      }
      table.p_cond(k, j) = clamp01(p);
    }
  }

  table.p_marginal.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      acc += e.members[static_cast<std::size_t>(j)].prior * table.p_cond(k, j);
    }
    table.p_marginal(k) = acc;
  }

  table.posterior.resize(n, n);
  table.posterior_defined.assign(static_cast<std::size_t>(n), false);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (table.p_marginal(k) <= tol.zero_tol) {
      table.posterior.col(k).setConstant(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    table.posterior_defined[static_cast<std::size_t>(k)] = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double p = e.members[static_cast<std::size_t>(j)].prior *
                       table.p_cond(k, j) / table.p_marginal(k);
      table.posterior(j, k) = clamp01(p);
    }
  }
  return table;
}

double error_probability(const Pom& pom, const Ensemble& e) {
  require_matching(pom, e);
  double correct = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    correct += e.members[k].prior *
               real_trace_product(pom.elements[k], e.members[k].state.matrix,
                                  "error_probability");
  }
  const double pe = 1.0 - correct;
  if (pe < -kRangeTol || pe > 1.0 + kRangeTol) {
    throw ContractError("error_probability: value " + std::to_string(pe) +
                        " outside [0, 1]");
  }
  return clamp01(pe);
}

Pom guess_pom(std::size_t j, std::size_t n, Eigen::Index dim) {
  if (j >= n) {
    throw ContractError("guess_pom: index " + std::to_string(j) +
                        " out of range for " + std::to_string(n) + " hypotheses");
  }
  if (dim < 1) throw ContractError("guess_pom: dimension must be >= 1");
  Pom pom;
  pom.dim = dim;
  pom.elements.assign(n, Mat::Zero(dim, dim));
  pom.elements[j] = Mat::Identity(dim, dim);
  return pom;
}

double mutual_information(const Pom& pom, const Ensemble& e, const Tolerances& tol) {
  const OutcomeTable table = outcome_table(pom, e, tol);
  const auto n = static_cast<Eigen::Index>(e.size());

  // Structural zero: when every positive-prior hypothesis induces the same
  // outcome distribution the outcome carries no information. Detecting this
  // up front keeps the guessing measurement at exactly zero bits instead of
  // rounding noise.
  Eigen::Index first = -1;
  bool identical = true;
  for (Eigen::Index j = 0; j < n && identical; ++j) {
    if (e.members[static_cast<std::size_t>(j)].prior <= 0.0) continue;
    if (first < 0) {
      first = j;
      continue;
    }
    identical = (table.p_cond.col(j) - table.p_cond.col(first))
                    .cwiseAbs()
                    .maxCoeff() <= tol.zero_tol;
  }
  if (identical) return 0.0;

  double bits = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double prior = e.members[static_cast<std::size_t>(j)].prior;
    if (prior <= 0.0) continue;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double cond = table.p_cond(k, j);
      if (cond <= 0.0) continue;  // 0 log 0 := 0
      bits += prior * cond * std::log2(cond / table.p_marginal(k));
    }
  }
  if (bits < -kRangeTol) {
    throw ContractError("mutual_information: negative value " + std::to_string(bits));
  }
  return std::max(0.0, bits);
}

Pom parse_pom_file(const std::filesystem::path& path) {
  return pom_from_json(read_json_file(path));
}

Pom load_pom(const std::filesystem::path& path, const Tolerances& tol) {
  Pom pom = parse_pom_file(path);
  const ValidationReport report = validate_pom(pom, tol);
  if (!report.valid) {
    throw ValidationError("invalid POM in " + path.string() + ": " +
                          summarize(report));
  }
  return pom;
}

void save_pom(const Pom& pom, const std::filesystem::path& path) {
  write_json_file(pom_to_json(pom), path);
}

}  // namespace qsd
