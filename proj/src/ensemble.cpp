#include "qsd/ensemble.hpp"

#include <cmath>
#include <sstream>

#include "qsd/json_io.hpp"

namespace qsd {

namespace {

constexpr double kPriorSumTol = 1e-9;
constexpr double kUnitNormTol = 1e-9;

}  // namespace

DensityMatrix make_pure(const Vec& amplitudes) {
  if (amplitudes.size() == 0) {
    throw ValidationError("make_pure: empty amplitude vector");
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kUnitNormTol) {
    std::ostringstream msg;
    msg << "make_pure: vector norm " << norm << " deviates from 1 by more than "
        << kUnitNormTol;
    throw ValidationError(msg.str());
  }
  return DensityMatrix{amplitudes * amplitudes.adjoint()};
}

DensityMatrix maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw ValidationError("maximally_mixed: dimension must be >= 1");
  return DensityMatrix{Mat::Identity(dim, dim) / static_cast<double>(dim)};
}

ValidationReport validate_ensemble(const Ensemble& e, const Tolerances& tol) {
  ValidationReport report;
  auto add = [&report](std::optional<std::size_t> member, std::string kind,
                       double residual, std::string message) {
    report.valid = false;
    report.violations.push_back(
        {member, std::move(kind), residual, std::move(message)});
  };

  if (e.members.empty()) {
    add(std::nullopt, "member_count", 1.0, "ensemble has no members");
    return report;
  }
  if (e.dim < 1) {
    add(std::nullopt, "dimension", 0.0, "ensemble dimension must be >= 1");
    return report;
  }

  double prior_sum = 0.0;
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    const EnsembleMember& m = e.members[i];
    const std::string at = "member " + std::to_string(i);

    if (m.prior < 0.0) {
      add(i, "prior_negative", -m.prior, at + ": prior is negative");
    }
    prior_sum += m.prior;

    const Mat& rho = m.state.matrix;
    if (rho.rows() != rho.cols() || rho.rows() != e.dim) {
      add(i, "dimension", 0.0,
          at + ": state is " + std::to_string(rho.rows()) + "x" +
              std::to_string(rho.cols()) + ", ensemble dimension is " +
              std::to_string(e.dim));
      continue;  // remaining checks assume a square dim-sized matrix
    }
    if (!rho.allFinite()) {
      add(i, "finite", 0.0, at + ": state has non-finite entries");
      continue;
    }

    const double herm = hermiticity_residual(rho);
    if (herm > tol.herm_tol) {
      add(i, "hermiticity", herm, at + ": Hermiticity residual " + std::to_string(herm));
    }

    const double min_eig = eig_hermitian(hermitian_part(rho)).values(0);
    if (min_eig < -tol.psd_tol) {
      add(i, "psd", -min_eig, at + ": minimum eigenvalue " + std::to_string(min_eig));
    }

    const double trace_residual = std::abs(rho.trace().real() - 1.0);
    if (trace_residual > tol.trace_tol) {
      add(i, "trace", trace_residual,
          at + ": trace deviates from 1 by " + std::to_string(trace_residual));
    }
  }

  const double sum_residual = std::abs(prior_sum - 1.0);
  if (sum_residual > kPriorSumTol) {
    add(std::nullopt, "prior_sum", sum_residual,
        "priors sum to " + std::to_string(prior_sum));
  }
  return report;
}

Ensemble parse_ensemble_file(const std::filesystem::path& path) {
  return ensemble_from_json(read_json_file(path));
}

Ensemble load_ensemble(const std::filesystem::path& path, const Tolerances& tol) {
  Ensemble e = parse_ensemble_file(path);
  const ValidationReport report = validate_ensemble(e, tol);
  if (!report.valid) {
    throw ValidationError("invalid ensemble in " + path.string() + ": " +
                          summarize(report));
  }
  return e;
}

void save_ensemble(const Ensemble& e, const std::filesystem::path& path) {
  write_json_file(ensemble_to_json(e), path);
}

double max_prior(const Ensemble& e) {
  if (e.members.empty()) throw ContractError("max_prior: empty ensemble");
  double best = e.members.front().prior;
  for (const auto& m : e.members) best = std::max(best, m.prior);
  return best;
}

std::vector<std::size_t> max_prior_indices(const Ensemble& e, double tie_tol) {
  const double best = max_prior(e);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    if (e.members[i].prior >= best - tie_tol) out.push_back(i);
  }
  return out;
}

std::string summarize(const ValidationReport& report) {
  if (report.valid) return "valid";
  std::ostringstream out;
  for (std::size_t i = 0; i < report.violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << report.violations[i].message;
  }
  return out.str();
}

}  // namespace qsd
