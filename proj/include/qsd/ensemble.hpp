#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qsd/linalg.hpp"

namespace qsd {

// Hermitian, positive-semidefinite, unit-trace operator: a quantum state.
// Loaders construct instances raw and push them through validate_ensemble;
// the factories below always produce valid states.
struct DensityMatrix {
  Mat matrix;
  Eigen::Index dim() const { return matrix.rows(); }
};

struct EnsembleMember {
  double prior = 0.0;
  DensityMatrix state;
};

// The hypothesis set {prior_k, state_k}. Member order is hypothesis order;
// the most likely index is a computed property, never an input convention.
struct Ensemble {
  Eigen::Index dim = 0;
  std::vector<EnsembleMember> members;
  std::size_t size() const { return members.size(); }
};

struct Violation {
  std::optional<std::size_t> member;  // empty for ensemble-level violations
  std::string kind;
  double residual = 0.0;
  std::string message;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

// Rank-1 projector |v><v|. The vector must already be normalized:
// out-of-tolerance input is rejected, not repaired.
DensityMatrix make_pure(const Vec& amplitudes);

// (1/dim) * identity, the no-information state.
DensityMatrix maximally_mixed(Eigen::Index dim);

// Collects every invariant violation (Hermiticity/PSD/trace per state,
// prior signs, prior sum, dimensions). Violations are report entries, not
// exceptions.
ValidationReport validate_ensemble(const Ensemble& e, const Tolerances& tol = {});

// Parse without validating; used by tools that want the report either way.
Ensemble parse_ensemble_file(const std::filesystem::path& path);

// Parse and validate; throws ValidationError when the report is not clean.
Ensemble load_ensemble(const std::filesystem::path& path, const Tolerances& tol = {});

void save_ensemble(const Ensemble& e, const std::filesystem::path& path);

double max_prior(const Ensemble& e);

// All indices whose prior ties the maximum within tie_tol.
std::vector<std::size_t> max_prior_indices(const Ensemble& e, double tie_tol);

std::string summarize(const ValidationReport& report);

}  // namespace qsd
