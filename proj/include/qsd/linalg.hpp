#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qsd/errors.hpp"

namespace qsd {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

// Absolute tolerances. Every operator handled by the toolkit has trace <= 1,
// so no relative scaling is applied anywhere.
struct Tolerances {
  double herm_tol = 1e-9;
  double psd_tol = 1e-9;
  double trace_tol = 1e-9;
  double zero_tol = 1e-12;
};

// Full real spectrum of a Hermitian matrix. values(i) belongs to
// vectors.col(i); values ascending, columns orthonormal.
struct Eigendecomposition {
  RealVec values;
  Mat vectors;
};

// max |entry|
double max_norm(const Mat& m);

// max-norm of m - m^dagger
double hermiticity_residual(const Mat& m);

// (m + m^dagger) / 2
Mat hermitian_part(const Mat& m);

// Re tr(a b) without forming the product; asserts nothing about the inputs.
Complex trace_product(const Mat& a, const Mat& b);

bool is_hermitian(const Mat& m, double tol);

// Deterministic Hermitian eigendecomposition: eigenvalues ascending, each
// eigenvector phase-fixed so its first non-negligible component is positive
// real, exact eigenvalue ties broken lexicographically on the fixed vectors.
Eigendecomposition eig_hermitian(const Mat& m, double herm_tol = Tolerances{}.herm_tol);

// Smallest eigenvalue; the quantitative margin behind every PSD verdict.
double min_eigenvalue(const Mat& m, double herm_tol = Tolerances{}.herm_tol);

// True iff min eigenvalue >= -tol. Eigenvalue-based rather than Cholesky so
// callers can also ask for the margin itself.
bool is_psd(const Mat& m, double tol, double herm_tol = Tolerances{}.herm_tol);

// True iff every eigenvector of b with eigenvalue > tol lies in the span of
// the eigenvectors of a with eigenvalue > tol, up to a projection residual
// of sqrt(tol). Both inputs must be Hermitian PSD.
bool support_contains(const Mat& a, const Mat& b, double tol);

// Pseudo-inverse square root of a Hermitian PSD matrix: eigenvalues <= cutoff
// are treated as kernel. kernel_projector is I minus the support projector.
struct InverseSqrt {
  Mat inv_sqrt;
  Mat kernel_projector;
};
InverseSqrt psd_inverse_sqrt(const Mat& m, double cutoff);

}  // namespace qsd
