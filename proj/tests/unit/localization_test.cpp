#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "framelab/error.hpp"
#include "framelab/generators.hpp"
#include "framelab/localization.hpp"
#include "oracles.hpp"

namespace framelab {
namespace {

using testing::brute_schur;
using testing::random_matrix;

std::vector<std::int64_t> range(std::size_t n) {
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::int64_t>(i);
  return out;
}

DenseMatrix two_power_decay(std::size_t n) {
  DenseMatrix a(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      a(k, l) = std::ldexp(1.0, -static_cast<int>(k > l ? k - l : l - k));
  return a;
}

// Random matrix whose entries decay away from the diagonal, so weighted norms stay moderate.
DenseMatrix random_banded(SplitMix64& rng, std::size_t n) {
  DenseMatrix a = random_matrix(rng, n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) a(k, l) *= std::pow(0.4, std::abs(static_cast<double>(k) - static_cast<double>(l)));
  return a;
}

TEST(IndexGeometry, Distances) {
  const IndexGeometry lin = IndexGeometry::linear();
  EXPECT_EQ(lin.distance(-3, 4), 7u);
  const IndexGeometry circ = IndexGeometry::circular(10);
  EXPECT_EQ(circ.distance(0, 9), 1u);
  EXPECT_EQ(circ.distance(2, 7), 5u);
  EXPECT_EQ(circ.distance(3, 3), 0u);
  EXPECT_EQ(circ.distance(-1, 1), 2u);
  EXPECT_THROW(IndexGeometry::circular(0), Error);
}

TEST(SchurWeight, Values) {
  EXPECT_EQ(SchurWeight(0.0)(5), 1.0);
  EXPECT_DOUBLE_EQ(SchurWeight(2.0)(3), 16.0);
  EXPECT_THROW(SchurWeight(-1.0), Error);
}

TEST(SchurNorm, Examples) {
  for (double s : {0.0, 1.0, 2.5}) EXPECT_EQ(schur_norm(DenseMatrix::identity(4), SchurWeight(s)), 1.0);
  const DenseMatrix a = two_power_decay(3);
  EXPECT_NEAR(schur_norm(a, SchurWeight(0.0)), 2.0, 1e-12);
  EXPECT_NEAR(schur_norm(a, SchurWeight(1.0)), 3.0, 1e-12);
}

TEST(SchurNorm, MatchesBruteForce) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + rng.below(10);
    const std::size_t cols = 1 + rng.below(10);
    const DenseMatrix a = random_matrix(rng, rows, cols);
    std::vector<std::int64_t> rp = range(rows);
    std::vector<std::int64_t> cp = range(cols);
    for (auto& p : cp) p = 2 * p + 1;
    const std::int64_t period = 23;
    const double s = rng.uniform(0.0, 2.0);
    const GramianMatrix g(a, rp, cp);
    EXPECT_NEAR(schur_norm(g, SchurWeight(s), IndexGeometry::linear()), brute_schur(a, rp, cp, s, 0), 1e-10);
    EXPECT_NEAR(schur_norm(g, SchurWeight(s), IndexGeometry::circular(period)), brute_schur(a, rp, cp, s, period),
                1e-10);
  }
}

TEST(SchurNorm, BanachAlgebraLaw) {
  SplitMix64 rng(2);
  for (int seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + rng.below(12);
    const DenseMatrix a = random_banded(rng, n);
    const DenseMatrix b = random_banded(rng, n);
    const DenseMatrix ab = a * b;
    const auto pos = range(n);
    for (double s : {0.0, 1.0, 2.0}) {
      for (const IndexGeometry& geom : {IndexGeometry::linear(), IndexGeometry::circular(n)}) {
        const SchurWeight w(s);
        const double lhs = schur_norm(GramianMatrix(ab, pos, pos), w, geom);
        const double rhs = schur_norm(GramianMatrix(a, pos, pos), w, geom) * schur_norm(GramianMatrix(b, pos, pos), w, geom);
        EXPECT_LE(lhs, rhs * (1 + 1e-12) + 1e-10);
      }
    }
  }
}

TEST(SchurNorm, InvolutionIsExact) {
  SplitMix64 rng(3);
  for (int seed = 0; seed < 50; ++seed) {
    const GramianMatrix a(random_matrix(rng, 1 + rng.below(9), 1 + rng.below(9)));
    const IndexGeometry geom = IndexGeometry::circular(7);
    EXPECT_EQ(schur_norm(a.adjoint(), SchurWeight(1.0), geom), schur_norm(a, SchurWeight(1.0), geom));
  }
}

TEST(SchurNorm, Solidity) {
  SplitMix64 rng(4);
  for (int seed = 0; seed < 50; ++seed) {
    const std::size_t n = 1 + rng.below(10);
    const DenseMatrix a = random_matrix(rng, n, n);
    DenseMatrix b = a;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) b(k, l) *= rng.uniform() * std::polar(1.0, rng.uniform(0.0, 6.0));
    for (double s : {0.0, 1.5}) EXPECT_LE(schur_norm(b, SchurWeight(s)), schur_norm(a, SchurWeight(s)) + 1e-12);
  }
}

TEST(SchurNorm, MonotoneInS) {
  SplitMix64 rng(5);
  for (int seed = 0; seed < 50; ++seed) {
    const DenseMatrix a = random_matrix(rng, 1 + rng.below(8), 1 + rng.below(8));
    double prev = 0.0;
    for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      const double v = schur_norm(a, SchurWeight(s));
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(SchurNorm, BoundsOperatorOnLp) {
  SplitMix64 rng(6);
  for (int seed = 0; seed < 50; ++seed) {
    const DenseMatrix a = random_matrix(rng, 1 + rng.below(10), 1 + rng.below(10));
    const double bound = schur_norm(a);
    const Vector x = testing::random_vector(rng, a.cols());
    const Vector ax = a * x;
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) EXPECT_LE(testing::lp(ax, p), bound * testing::lp(x, p) + 1e-10);
  }
}

TEST(LocalizationDegree, Examples) {
  EXPECT_NEAR(localization_degree(gen_onb(5), gen_onb(5), SchurWeight(1.0), IndexGeometry::linear()), 1.0, 1e-15);

  const FrameSystem f = gen_exp_localized(8, 16, 0.5, 1);
  const IndexGeometry geom = f.geometry();
  const GramianMatrix g = gramian(f);
  EXPECT_NEAR(localization_degree(f, f, SchurWeight(0.0), geom),
              brute_schur(g.entries, g.row_positions, g.col_positions, 0.0, 16), 1e-12);

  const FrameSystem tight = gen_harmonic(3, 7);  // A = B = 7/3
  const FrameSystem dual = canonical_dual(tight).dual();
  EXPECT_NEAR(localization_degree(tight, dual, SchurWeight(0.0), tight.geometry()),
              (3.0 / 7.0) * schur_norm(gramian(tight), SchurWeight(0.0), tight.geometry()), 1e-12);

  EXPECT_THROW(localization_degree(gen_onb(2), gen_onb(3), SchurWeight(), IndexGeometry::linear()), Error);
}

TEST(DualLocalization, Examples) {
  const DualLocalizationReport onb =
      check_dual_localization(gen_onb(4), SchurWeight(2.0), IndexGeometry::linear(), 1.5);
  EXPECT_NEAR(onb.frame_norm, 1.0, 1e-14);
  EXPECT_NEAR(onb.dual_norm, 1.0, 1e-14);
  EXPECT_TRUE(onb.passes);

  // Two copies of the standard basis: every Gramian row holds two unit entries.
  const FrameSystem basis = gen_onb(4);
  std::vector<Vector> doubled;
  for (int copy = 0; copy < 2; ++copy)
    for (const auto& e : basis.elements()) doubled.push_back(e);
  const FrameSystem u(4, doubled);
  const DualLocalizationReport union_report = check_dual_localization(u, SchurWeight(0.0), u.geometry(), 2.0);
  EXPECT_NEAR(union_report.frame_norm, 2.0, 1e-12);
  EXPECT_NEAR(union_report.dual_norm, 0.5, 1e-12);
  EXPECT_TRUE(union_report.passes);

  // Standard plus Fourier basis: row sum 1 + d * (1/sqrt d).
  const FrameSystem mub = gen_union_onb(4);
  const DualLocalizationReport mub_report = check_dual_localization(mub, SchurWeight(0.0), mub.geometry(), 3.0);
  EXPECT_NEAR(mub_report.frame_norm, 3.0, 1e-12);
  EXPECT_NEAR(mub_report.dual_norm, 0.75, 1e-12);

  const FrameSystem loc = gen_exp_localized(8, 16, 0.5, 3);
  const DualLocalizationReport r = check_dual_localization(loc, SchurWeight(1.0), loc.geometry(), 1e6);
  EXPECT_TRUE(std::isfinite(r.dual_norm));
  EXPECT_GT(r.dual_norm, 0.0);

  EXPECT_THROW(check_dual_localization(FrameSystem(2, {{1.0, 0.0}}), SchurWeight(), IndexGeometry::linear(), 1.0),
               Error);
}

TEST(DecayProfile, Examples) {
  const auto id = decay_profile(GramianMatrix(DenseMatrix::identity(4)), IndexGeometry::linear());
  ASSERT_EQ(id.size(), 4u);
  EXPECT_EQ(id[0].max_abs, 1.0);
  for (std::size_t k = 1; k < id.size(); ++k) EXPECT_EQ(id[k].max_abs, 0.0);

  const auto decay = decay_profile(GramianMatrix(two_power_decay(6)), IndexGeometry::linear());
  for (const auto& point : decay) {
    EXPECT_EQ(point.max_abs, std::ldexp(1.0, -static_cast<int>(point.distance)));
  }

  SplitMix64 rng(7);
  const FrameSystem f = testing::random_frame(rng, 4, 9);
  double max_norm = 0.0;
  for (const auto& e : f.elements()) max_norm = std::max(max_norm, norm2(e));
  for (const auto& point : decay_profile(gramian(f), IndexGeometry::circular(9))) {
    EXPECT_LE(point.max_abs, max_norm * max_norm * (1 + 1e-12));
  }
}

}  // namespace
}  // namespace framelab
