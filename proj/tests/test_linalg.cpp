#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsd/linalg.hpp"
#include "test_support.hpp"

using namespace qsd;
using qsd::test::random_density;
using qsd::test::random_unitary;

namespace {

Mat mat2(Complex a, Complex b, Complex c, Complex d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Mat diag2(double a, double b) { return mat2(a, 0, 0, b); }

Mat ket0_projector() { return mat2(1, 0, 0, 0); }
Mat ket1_projector() { return mat2(0, 0, 0, 1); }

}  // namespace

TEST_CASE("is_hermitian on simple matrices") {
  CHECK(is_hermitian(Mat::Identity(2, 2), 1e-9));
  // anti-Hermitian off-diagonal: [[0, i], [i, 0]]
  CHECK_FALSE(is_hermitian(mat2(0, Complex(0, 1), Complex(0, 1), 0), 1e-9));
  // Pauli-Y: [[0, -i], [i, 0]]
  CHECK(is_hermitian(mat2(0, Complex(0, -1), Complex(0, 1), 0), 1e-9));
}

TEST_CASE("is_hermitian rejects non-square input") {
  Mat m(2, 3);
  m.setZero();
  CHECK_THROWS_AS(is_hermitian(m, 1e-9), DimensionError);
}

TEST_CASE("eig_hermitian on known spectra") {
  SUBCASE("identity") {
    const Eigendecomposition eig = eig_hermitian(Mat::Identity(2, 2));
    CHECK(eig.values(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.values(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("diag(3, -1) sorts ascending") {
    const Eigendecomposition eig = eig_hermitian(diag2(3.0, -1.0));
    CHECK(eig.values(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eig.values(1) == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("rank-1 projector onto (|0>+|1>)/sqrt(2)") {
    const Eigendecomposition eig = eig_hermitian(0.5 * mat2(1, 1, 1, 1));
    CHECK(std::abs(eig.values(0)) <= 1e-12);
    CHECK(eig.values(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  CHECK_THROWS_AS(eig_hermitian(mat2(0, 1, 0, 0)), ContractError);
}

TEST_CASE("eig_hermitian reconstruction and orthonormality") {
  Prng prng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(prng.next_u64() % 5);
    const Mat m = hermitian_part(qsd::test::random_ginibre(prng, dim));
    const Eigendecomposition eig = eig_hermitian(m);

    const Mat reconstructed =
        eig.vectors * eig.values.asDiagonal().toDenseMatrix().cast<Complex>() *
        eig.vectors.adjoint();
    CHECK(max_norm(m - reconstructed) <= 1e-9 * std::max(1.0, max_norm(m)));
    CHECK(max_norm(eig.vectors.adjoint() * eig.vectors - Mat::Identity(dim, dim)) <= 1e-10);

    for (Eigen::Index i = 0; i + 1 < eig.values.size(); ++i) {
      CHECK(eig.values(i) <= eig.values(i + 1));
    }
  }
}

TEST_CASE("eigenvalues are unitary invariant") {
  Prng prng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(prng.next_u64() % 4);
    const Mat m = hermitian_part(qsd::test::random_ginibre(prng, dim));
    const Mat u = random_unitary(prng, dim);
    const Mat rotated = u * m * u.adjoint();

    const RealVec a = eig_hermitian(m).values;
    const RealVec b = eig_hermitian(hermitian_part(rotated)).values;
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("trace equals eigenvalue sum") {
  Prng prng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat m = hermitian_part(qsd::test::random_ginibre(prng, 4));
    const Eigendecomposition eig = eig_hermitian(m);
    CHECK(std::abs(m.trace().real() - eig.values.sum()) <= 1e-9);
  }
}

TEST_CASE("is_psd on simple matrices") {
  CHECK(is_psd(Mat::Identity(3, 3), 1e-9));
  CHECK_FALSE(is_psd(diag2(0.5, -0.01), 1e-9));
  // boundary: within tolerance
  CHECK(is_psd(diag2(0.5, -1e-12), 1e-9));
}

TEST_CASE("sum of PSD matrices stays PSD") {
  Prng prng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat a = random_density(prng, 3).matrix;
    const Mat b = random_density(prng, 3).matrix;
    CHECK(is_psd(a, 1e-9));
    CHECK(is_psd(b, 1e-9));
    CHECK(is_psd(hermitian_part(a + b), 1e-9));
  }
}

TEST_CASE("support_contains basic geometry") {
  const Mat half_identity = 0.5 * Mat::Identity(2, 2);
  CHECK(support_contains(half_identity, ket0_projector(), 1e-9));
  CHECK_FALSE(support_contains(ket0_projector(), ket1_projector(), 1e-9));
  CHECK_FALSE(support_contains(ket0_projector(), half_identity, 1e-9));
}

TEST_CASE("support_contains rejects mismatched dimensions") {
  CHECK_THROWS_AS(support_contains(Mat::Identity(2, 2), Mat::Identity(3, 3), 1e-9),
                  DimensionError);
}

TEST_CASE("psd_inverse_sqrt inverts on the support") {
  Prng prng(15);
  const Mat rho = random_density(prng, 4).matrix;
  const InverseSqrt s = psd_inverse_sqrt(rho, 1e-12);
  // full rank almost surely: S * rho * S == identity
  CHECK(max_norm(s.inv_sqrt * rho * s.inv_sqrt - Mat::Identity(4, 4)) <= 1e-9);
  CHECK(max_norm(s.kernel_projector) <= 1e-9);

  // rank-deficient case
  const Mat proj = ket0_projector();
  const InverseSqrt sp = psd_inverse_sqrt(proj, 1e-12);
  CHECK(max_norm(sp.inv_sqrt - proj) <= 1e-12);
  CHECK(max_norm(sp.kernel_projector - ket1_projector()) <= 1e-12);
}

TEST_CASE("eig_hermitian is deterministic") {
  Prng prng(16);
  const Mat m = hermitian_part(qsd::test::random_ginibre(prng, 5));
  const Eigendecomposition a = eig_hermitian(m);
  const Eigendecomposition b = eig_hermitian(m);
  CHECK(max_norm(a.vectors - b.vectors) == 0.0);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}
