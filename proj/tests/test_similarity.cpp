#include <gtest/gtest.h>

#include <cmath>

#include "amenalab/similarity.hpp"
#include "oracles.hpp"

using namespace amenalab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

/// Minimum-norm solution of B N = S over all M x M matrices B, via the
/// Kronecker form (N^T (x) I) vec(B) = vec(S) and an SVD pseudo-inverse.
double kronecker_oracle_norm(const std::vector<double>& n_diag) {
  const auto m = static_cast<Eigen::Index>(n_diag.size());
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(m, m), s = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    n(i, i) = n_diag[static_cast<std::size_t>(i)];
    s(i, i) = std::sqrt(n_diag[static_cast<std::size_t>(i)]);
  }
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m * m, m * m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) k.block(a * m, b * m, m, m) = n(b, a) * Eigen::MatrixXd::Identity(m, m);
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(s.data(), m * m);
  const Eigen::VectorXd x = k.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  return oracle::svd_norm(Eigen::Map<const Eigen::MatrixXd>(x.data(), m, m));
}

}  // namespace

TEST(Conjugation, ZeroShearIsIdentity) {
  const auto s = geometric_spectrum(q(1, 2), 4);
  const auto t = build_T<Surd>(s);
  EXPECT_EQ(conjugate_by_upper_unipotent(t, ExactDiagonal::zero(4)), t);
}

TEST(Conjugation, SinglePointCornerVanishes) {
  const auto t = build_T<Surd>(explicit_spectrum({q(1, 4)}));
  const auto c = conjugate_by_upper_unipotent(t, ExactDiagonal(std::vector<Surd>{Surd(q(-2))}));
  EXPECT_TRUE(c.b12.is_zero());
  EXPECT_EQ(c.b22[0], Surd(q(1, 4)));
}

TEST(ConjugationProperty, CornerIsRootNPlusBN) {
  oracle::Gen gen(81);
  const auto s = geometric_spectrum(q(1, 2), 4);
  const std::vector<double> l{0.5, 0.25, 0.125, 0.0625};
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = gen.reals(4, -5, 5);
    const auto c = conjugate_by_upper_unipotent(build_T<double>(s), FloatDiagonal(b));
    // Dense oracle: S T S^{-1} with S = [[I, B], [0, I]].
    const std::vector<double> zero(4, 0.0), one(4, 1.0);
    std::vector<double> minus_b(b);
    for (auto& x : minus_b) x = -x;
    const Eigen::MatrixXd expected = oracle::dense_blocks(one, b, zero, one) * oracle::dense_T(l) *
                                     oracle::dense_blocks(one, minus_b, zero, one);
    EXPECT_LE((oracle::dense(c) - expected).cwiseAbs().maxCoeff(), 1e-13);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(c.b12[i], std::sqrt(l[i]) + b[i] * l[i], 1e-14);
  }
}

TEST(ConjugationProperty, MinusInverseRootZeroesTheCornerExactly) {
  for (std::size_t m : {1u, 4u, 8u, 16u, 20u}) {
    const auto s = geometric_spectrum(q(1, 2), m);
    std::vector<Surd> b;
    for (const auto& l : s.values()) b.push_back(-(Surd::sqrt_of(l) / Surd(l)));
    const auto c = conjugate_by_upper_unipotent(build_T<Surd>(s), ExactDiagonal(b));
    EXPECT_TRUE(c.b12.is_zero());
    EXPECT_EQ(c.b22, diagonal_N<Surd>(s));
  }
}

TEST(Intertwiner, ThreePointsAgainstKroneckerOracle) {
  const auto r = minimal_intertwiner(geometric_spectrum(q(1, 2), 3));
  EXPECT_NEAR(r.norm, std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(kronecker_oracle_norm({0.5, 0.25, 0.125}), std::sqrt(8.0), 1e-10);
  EXPECT_NEAR(r.oracle_norm, r.norm, 1e-10);
  EXPECT_LE(r.residual, 1e-15);
}

TEST(Intertwiner, UnitPoint) {
  const auto r = minimal_intertwiner(explicit_spectrum({q(1)}));
  ASSERT_EQ(r.b.size(), 1u);
  EXPECT_DOUBLE_EQ(r.b[0], 1.0);
  EXPECT_DOUBLE_EQ(r.norm, 1.0);
}

TEST(Intertwiner, TwentyPoints) {
  const auto r = minimal_intertwiner(geometric_spectrum(q(1, 2), 20));
  EXPECT_NEAR(r.norm, 1024.0, 1e-9);
  EXPECT_NEAR(r.oracle_norm, 1024.0, 1e-6);
}

TEST(Intertwiner, SingularSpectrumIsUnbounded) {
  EXPECT_THROW(minimal_intertwiner(std::vector<double>{0.5, 0.0}), std::domain_error);
}

TEST(IntertwinerProperty, DiagonalSolutionMatchesKroneckerOracle) {
  oracle::Gen gen(82);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> d;
    for (const auto& v : gen.decreasing(static_cast<std::size_t>(gen.integer(1, 6)))) d.push_back(v.get_d());
    const auto r = minimal_intertwiner(d);
    EXPECT_NEAR(r.norm, kronecker_oracle_norm(d), 1e-9 * r.norm);
    EXPECT_NEAR(r.norm, 1.0 / std::sqrt(d.back()), 1e-12 * r.norm);
  }
}

TEST(SimilaritySweep, GeometricNorms) {
  const auto rep = similarity_growth_sweep({SpectrumKind::geometric, q(1, 2), {}}, {4, 8, 16});
  const auto norms = rep.column_values("intertwiner_norm");
  ASSERT_EQ(norms.size(), 3u);
  EXPECT_NEAR(norms[0], 4, 1e-12);
  EXPECT_NEAR(norms[1], 16, 1e-12);
  EXPECT_NEAR(norms[2], 256, 1e-12);
  EXPECT_TRUE(rep.verdict("strictly_increasing"));
  EXPECT_TRUE(rep.passed());
}

TEST(SimilaritySweep, HarmonicNorms) {
  const auto rep = similarity_growth_sweep({SpectrumKind::harmonic, q(1, 2), {}}, {4, 16});
  const auto norms = rep.column_values("intertwiner_norm");
  EXPECT_NEAR(norms[0], 2, 1e-12);
  EXPECT_NEAR(norms[1], 4, 1e-12);
}

TEST(SimilaritySweep, SingletonAndThreshold) {
  const auto one = similarity_growth_sweep({}, {5});
  EXPECT_EQ(one.rows().size(), 1u);
  EXPECT_TRUE(one.verdict("strictly_increasing"));
  EXPECT_FALSE(similarity_growth_sweep({}, {4, 8}, 100.0).verdict("threshold_met"));
  EXPECT_TRUE(similarity_growth_sweep({}, {4, 16}, 100.0).verdict("threshold_met"));
  EXPECT_THROW(similarity_growth_sweep({}, {8, 4}), ValidationError);
}
