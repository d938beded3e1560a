#include "qsd/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace qsd {

namespace {

void require_square(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("matrix is not square: " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
  }
}

void require_finite(const Mat& m) {
  if (!m.allFinite()) {
    throw ContractError("matrix has non-finite entries");
  }
}

// Phase-fix one eigenvector: rotate so the first component with magnitude
// above threshold becomes positive real.
void fix_phase(Eigen::Ref<Vec> v) {
  constexpr double kPivotThreshold = 1e-8;
  for (Eigen::Index r = 0; r < v.size(); ++r) {
    const double mag = std::abs(v(r));
    if (mag > kPivotThreshold) {
      v *= std::conj(v(r)) / mag;
      return;
    }
  }
}

bool lex_less(const Mat& vecs, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
    const Complex x = vecs(r, a);
    const Complex y = vecs(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

double max_norm(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Mat& m) {
  require_square(m);
  return max_norm(m - m.adjoint());
}

Mat hermitian_part(const Mat& m) {
  require_square(m);
  return 0.5 * (m + m.adjoint());
}

Complex trace_product(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_product: incompatible shapes");
  }
  // tr(ab) = sum_{r,c} a(r,c) b(c,r)
  return a.transpose().cwiseProduct(b).sum();
}

bool is_hermitian(const Mat& m, double tol) {
  require_square(m);
  require_finite(m);
  if (tol < 0.0) throw ContractError("is_hermitian: negative tolerance");
  return hermiticity_residual(m) <= tol;
}

Eigendecomposition eig_hermitian(const Mat& m, double herm_tol) {
  if (!is_hermitian(m, herm_tol)) {
    throw ContractError("eig_hermitian: input not Hermitian within " +
                        std::to_string(herm_tol) + " (residual " +
                        std::to_string(hermiticity_residual(m)) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw Error("eig_hermitian: eigensolver did not converge");
  }

  Mat vectors = solver.eigenvectors();
  RealVec values = solver.eigenvalues();
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) fix_phase(vectors.col(c));

  // The solver already sorts ascending; re-sort only to pin exact ties.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a) != values(b)) return values(a) < values(b);
    return lex_less(vectors, a, b);
  });

  Eigendecomposition out;
  out.values.resize(values.size());
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out.values(i) = values(order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

double min_eigenvalue(const Mat& m, double herm_tol) {
  return eig_hermitian(m, herm_tol).values(0);
}

bool is_psd(const Mat& m, double tol, double herm_tol) {
  if (tol < 0.0) throw ContractError("is_psd: negative tolerance");
  return min_eigenvalue(m, herm_tol) >= -tol;
}

bool support_contains(const Mat& a, const Mat& b, double tol) {
  require_square(a);
  require_square(b);
  if (a.rows() != b.rows()) {
    throw DimensionError("support_contains: dimension mismatch " +
                         std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()));
  }
  if (tol < 0.0) throw ContractError("support_contains: negative tolerance");
  const Tolerances defaults;
  const Eigendecomposition ea = eig_hermitian(a, defaults.herm_tol);
  const Eigendecomposition eb = eig_hermitian(b, defaults.herm_tol);
  if (ea.values(0) < -defaults.psd_tol || eb.values(0) < -defaults.psd_tol) {
    throw ContractError("support_contains: inputs must be positive semidefinite");
  }

  Mat proj = Mat::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < ea.values.size(); ++i) {
    if (ea.values(i) > tol) {
      proj += ea.vectors.col(i) * ea.vectors.col(i).adjoint();
    }
  }

  const double residual_tol = std::sqrt(tol);
  for (Eigen::Index i = 0; i < eb.values.size(); ++i) {
    if (eb.values(i) <= tol) continue;
    const Vec v = eb.vectors.col(i);
    const double residual = (v - proj * v).norm();
    if (residual > residual_tol) return false;
  }
  return true;
}

InverseSqrt psd_inverse_sqrt(const Mat& m, double cutoff) {
  const Eigendecomposition eig = eig_hermitian(m);
  InverseSqrt out;
  out.inv_sqrt = Mat::Zero(m.rows(), m.cols());
  Mat support = Mat::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) <= cutoff) continue;
    const Mat outer = eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    out.inv_sqrt += outer / std::sqrt(eig.values(i));
    support += outer;
  }
  out.kernel_projector = Mat::Identity(m.rows(), m.cols()) - support;
  return out;
}

}  // namespace qsd
