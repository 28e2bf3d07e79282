#include <gtest/gtest.h>

#include <cmath>

#include "framelab/error.hpp"
#include "framelab/linalg.hpp"
#include "oracles.hpp"

namespace framelab {
namespace {

using testing::eig2x2;
using testing::random_hermitian;
using testing::random_matrix;
using testing::random_vector;

constexpr Complex kI{0.0, 1.0};

TEST(HermitianEig, IdentityHasUnitSpectrum) {
  const EigenResult eig = hermitian_eig(DenseMatrix::identity(3));
  for (double lambda : eig.eigenvalues) EXPECT_DOUBLE_EQ(lambda, 1.0);
}

TEST(HermitianEig, RealSymmetricTwoByTwo) {
  // characteristic polynomial l^2 - 4l + 3
  const EigenResult eig = hermitian_eig(DenseMatrix{{2.0, 1.0}, {1.0, 2.0}});
  EXPECT_NEAR(eig.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(eig.eigenvalues[1], 3.0, 1e-14);
}

TEST(HermitianEig, PauliY) {
  // characteristic polynomial l^2 - 1
  const EigenResult eig = hermitian_eig(DenseMatrix{{0.0, -kI}, {kI, 0.0}});
  EXPECT_NEAR(eig.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(eig.eigenvalues[1], 1.0, 1e-14);
}

TEST(HermitianEig, MatchesClosedFormOnRandomTwoByTwo) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = rng.normal();
    const double d = rng.normal();
    const Complex b(rng.normal(), rng.normal());
    const auto [lo, hi] = eig2x2(a, b, d);
    const EigenResult eig = hermitian_eig(DenseMatrix{{a, b}, {std::conj(b), d}});
    EXPECT_NEAR(eig.eigenvalues[0], lo, 1e-12);
    EXPECT_NEAR(eig.eigenvalues[1], hi, 1e-12);
  }
}

TEST(HermitianEig, RejectsNonHermitian) {
  try {
    hermitian_eig(DenseMatrix{{1.0, 2.0}, {0.0, 1.0}});
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
  }
}

TEST(HermitianEig, SweepCapReportsNoConvergence) {
  SplitMix64 rng(3);
  JacobiOptions options;
  options.max_sweeps = 1;
  try {
    hermitian_eig(random_hermitian(rng, 12), 1e-10, options);
    FAIL() << "expected NoConvergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoConvergence);
  }
}

TEST(HermitianEig, ResidualAndOrthogonalityOnRandomMatrices) {
  SplitMix64 rng(11);
  for (std::size_t n : {1u, 2u, 5u, 17u, 32u, 64u}) {
    const DenseMatrix m = random_hermitian(rng, n);
    const EigenResult eig = hermitian_eig(m);
    ASSERT_TRUE(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
    const DenseMatrix& v = eig.eigenvectors;
    const double gram_err = testing::max_abs_diff(v.adjoint() * v, DenseMatrix::identity(n));
    EXPECT_LT(gram_err, 1e-10) << "n=" << n;
    const double norm_m = frobenius_norm(m);
    for (std::size_t k = 0; k < n; ++k) {
      const Vector vk = v.column(k);
      Vector r = m * vk;
      for (std::size_t i = 0; i < n; ++i) r[i] -= eig.eigenvalues[k] * vk[i];
      EXPECT_LE(norm2(r), 1e-10 * norm_m);
    }
  }
}

TEST(HermitianEig, TraceEqualsEigenvalueSum) {
  SplitMix64 rng(2024);
  for (int seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + rng.below(32);
    const DenseMatrix m = random_hermitian(rng, n);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += m(i, i).real();
    const EigenResult eig = hermitian_eig(m);
    double sum = 0.0;
    double scale = 0.0;
    for (double l : eig.eigenvalues) sum += l, scale += std::abs(l);
    EXPECT_LE(std::abs(trace - sum), 1e-9 * std::max(1.0, scale));
  }
}

TEST(HermitianEig, ZeroMatrix) {
  const EigenResult eig = hermitian_eig(DenseMatrix(4, 4));
  for (double l : eig.eigenvalues) EXPECT_EQ(l, 0.0);
}

TEST(SolveHpd, Identity) {
  const Vector x = solve_hpd(DenseMatrix::identity(2), Vector{1.0, 2.0});
  EXPECT_NEAR(std::abs(x[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x[1] - 2.0), 0.0, 1e-15);
}

TEST(SolveHpd, Diagonal) {
  const std::vector<double> diag{2.0, 4.0};
  const Vector x = solve_hpd(DenseMatrix::diagonal(diag), Vector{2.0, 4.0});
  EXPECT_NEAR(std::abs(x[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x[1] - 1.0), 0.0, 1e-15);
}

TEST(SolveHpd, TwoByTwoInverse) {
  // inverse (1/3)[[2,-1],[-1,2]]
  const Vector x = solve_hpd(DenseMatrix{{2.0, 1.0}, {1.0, 2.0}}, Vector{1.0, 0.0});
  EXPECT_NEAR(std::abs(x[0] - 2.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x[1] + 1.0 / 3.0), 0.0, 1e-15);
}

TEST(SolveHpd, SingularOperator) {
  try {
    solve_hpd(DenseMatrix{{1.0, 1.0}, {1.0, 1.0}}, Vector{1.0, 0.0});
    FAIL() << "expected SingularOperator";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularOperator);
  }
}

TEST(SolveHpd, RoundTripResidual) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(24);
    const DenseMatrix a = random_matrix(rng, n + 3, n);
    const DenseMatrix m = a.adjoint() * a;
    const Vector b = random_vector(rng, n);
    const Vector x = solve_hpd(m, b);
    const Vector mx = m * x;
    Vector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = mx[i] - b[i];
    EXPECT_LE(norm2(r), 1e-10 * norm2(b));
  }
}

TEST(LuDecomposition, SolvesGeneralSystems) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(16);
    const DenseMatrix m = random_matrix(rng, n, n);
    const Vector b = random_vector(rng, n);
    const Vector x = LuDecomposition(m).solve(b);
    EXPECT_LT(testing::max_abs_diff(m * x, b), 1e-9);
  }
}

TEST(SpectralNorm, Examples) {
  const std::vector<double> diag{3.0, -5.0};
  EXPECT_NEAR(spectral_norm(DenseMatrix::diagonal(diag)), 5.0, 1e-14);
  EXPECT_EQ(spectral_norm(DenseMatrix(3, 2)), 0.0);
  // eigenvalues of M*M = [[1,1],[1,2]] are (3 +- sqrt 5)/2
  EXPECT_NEAR(spectral_norm(DenseMatrix{{1.0, 1.0}, {0.0, 1.0}}), std::sqrt((3.0 + std::sqrt(5.0)) / 2.0), 1e-14);
}

TEST(SpectralNorm, AdjointInvarianceAndPowerIterationOracle) {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const DenseMatrix m = random_matrix(rng, 1 + rng.below(12), 1 + rng.below(12));
    const double s = spectral_norm(m);
    EXPECT_NEAR(spectral_norm(m.adjoint()), s, 1e-12 * std::max(1.0, s));
    EXPECT_NEAR(testing::power_spectral_norm(m), s, 1e-8 * s);
  }
}

TEST(LargestSingular, RightVectorAttainsNorm) {
  SplitMix64 rng(8);
  const DenseMatrix m = random_matrix(rng, 5, 9);
  const SingularPair top = largest_singular(m);
  EXPECT_NEAR(norm2(top.right), 1.0, 1e-12);
  EXPECT_NEAR(norm2(m * top.right), top.value, 1e-10);
}

}  // namespace
}  // namespace framelab
