#include <gtest/gtest.h>

#include <cmath>

#include "amenalab/approximate_identity.hpp"
#include "oracles.hpp"

using namespace amenalab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

const std::vector<unsigned> kDegrees{8, 16, 32, 64};

}  // namespace

TEST(ApproximateIdentity, InterpolantGivesExactUnitOnTwoPoints) {
  const auto s = geometric_spectrum(q(1, 2), 2);
  const RationalPolynomial p(std::vector<Rational>{q(0), q(6), q(-8)});
  // lambda_1 I - T has eigenvalues {1/2, 0, 1/4}; p is 1 at 1/2 and 1/4.
  const auto r = approximate_identity_residual(1, s, p);
  EXPECT_LE(r.residual, 1e-14);
  // Dense oracle.
  const Eigen::MatrixXd x = 0.5 * Eigen::MatrixXd::Identity(4, 4) - oracle::dense_T({0.5, 0.25});
  const Eigen::MatrixXd u = 6 * x - 8 * x * x;
  EXPECT_LE(oracle::svd_norm(x * u - x), 1e-14);
  EXPECT_NEAR(r.u_norm, oracle::svd_norm(u), 1e-12);
}

TEST(ApproximateIdentity, ZeroPolynomialLeavesTheGenerator) {
  const auto s = geometric_spectrum(q(1, 2), 5);
  const auto r = approximate_identity_residual(2, s, RationalPolynomial());
  EXPECT_NEAR(r.residual, operator_norm(shifted_T(2, s)), 1e-15);
  EXPECT_EQ(r.u_norm, 0.0);
}

TEST(ApproximateIdentity, ShiftedGeneratorMatchesDenseOracle) {
  const auto s = geometric_spectrum(q(1, 3), 4);
  const std::vector<double> l{1.0 / 3, 1.0 / 9, 1.0 / 27, 1.0 / 81};
  const Eigen::MatrixXd x = (1.0 / 9) * Eigen::MatrixXd::Identity(8, 8) - oracle::dense_T(l);
  EXPECT_LE((oracle::dense(shifted_T(2, s)) - x).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(ApproximateIdentity, SecondCharacterResidualsStrictlyDecrease) {
  const auto s = geometric_spectrum(q(1, 2), 16);
  const auto run = approximate_identity_sequence(2, s, kDegrees);
  const auto res = run.report.column_values("residual");
  for (std::size_t i = 1; i < res.size(); ++i) EXPECT_LT(res[i], res[i - 1]);
}

TEST(ApproximateIdentity, PipelineVerdictsForFirstThreeCharacters) {
  const auto s = geometric_spectrum(q(1, 2), 16);
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto run = approximate_identity_sequence(n, s, kDegrees);
    EXPECT_TRUE(run.report.verdict("threshold_met")) << n;
    EXPECT_TRUE(run.report.verdict("monotone")) << n;
    EXPECT_TRUE(run.report.verdict("bounded")) << n;
    EXPECT_TRUE(run.report.verdict("mean_value_bound")) << n;
    ASSERT_EQ(run.p.size(), kDegrees.size());
    for (std::size_t k = 0; k < run.p.size(); ++k) {
      EXPECT_EQ(run.p[k].constant_term(), 0);
      EXPECT_TRUE(run.mvt[k].holds);
      // Residual identity: (X u - X) = (lambda_n I - T)(p(X) - I); u stays in the algebra of X.
      EXPECT_EQ(divide_shifted(run.p[k], s.lambda(n)), run.q[k]);
    }
  }
}

TEST(ApproximateIdentity, ElementNormsStayBelowCertifiedBounds) {
  const auto s = geometric_spectrum(q(1, 2), 16);
  const auto run = approximate_identity_sequence(3, s, kDegrees);
  const auto u = run.report.column_values("u_norm");
  const auto b = run.report.column_values("u_bound");
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_LE(u[i], b[i]);
    EXPECT_LE(b[i], 2 * run.limit_bound);
  }
}

TEST(ApproximateIdentity, ElementNormsMatchDenseOracle) {
  const auto s = geometric_spectrum(q(1, 2), 8);
  const auto run = approximate_identity_sequence(1, s, {8, 16});
  std::vector<double> l;
  for (const auto& v : s.values()) l.push_back(v.get_d());
  const Eigen::MatrixXd x = 0.5 * Eigen::MatrixXd::Identity(16, 16) - oracle::dense_T(l);
  for (std::size_t k = 0; k < 2; ++k) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(16, 16), pw = x;
    // The monomial sum cancels heavily; its own rounding error is about eps * sum |c_j| ||X||^j.
    double scale = 0.0, xn = oracle::svd_norm(x), xp = xn;
    for (std::size_t j = 1; j < run.p[k].coefficients().size(); ++j, pw = pw * x, xp *= xn) {
      u += run.p[k].coefficients()[j].get_d() * pw;
      scale += std::abs(run.p[k].coefficients()[j].get_d()) * xp;
    }
    const double tol = 64 * 1e-16 * scale;
    EXPECT_NEAR(run.report.column_values("u_norm")[k], oracle::svd_norm(u), tol);
    EXPECT_NEAR(run.report.column_values("residual")[k], oracle::svd_norm(x * u - x), tol);
  }
}

TEST(ApproximateIdentity, RejectsBadDegreeLists) {
  const auto s = geometric_spectrum(q(1, 2), 4);
  EXPECT_THROW(approximate_identity_sequence(1, s, {}), ValidationError);
  EXPECT_THROW(approximate_identity_sequence(1, s, {8, 8}), ValidationError);
  EXPECT_THROW(approximate_identity_sequence(1, s, {1, 4}), ValidationError);
  EXPECT_THROW(approximate_identity_sequence(5, s, {4}), std::out_of_range);
}

TEST(ApproximateIdentity, BernsteinSchemeSaturates) {
  // Bernstein approximants converge like 1/k, too slowly for a 1e-3 residual at degree 64.
  const auto s = geometric_spectrum(q(1, 2), 16);
  ApproximateIdentityOptions opts;
  opts.scheme = ApproximationScheme::bernstein;
  const auto run = approximate_identity_sequence(1, s, {16, 32, 64}, opts);
  EXPECT_FALSE(run.report.verdict("threshold_met"));
  EXPECT_GT(run.report.column_values("residual").back(), 1e-3);
}

TEST(UnitApproximation, TruncationUnitIsExact) {
  const auto s = geometric_spectrum(q(1, 2), 10);
  EXPECT_EQ(unit_residual(truncation_unit<Surd>(s), s), 0.0);
}

TEST(UnitApproximation, SymbolOneIsNotAUnit) {
  // sum_n sqrt(lambda_n) E_n has symbol 1: T u = [[0, N], [0, N^{3/2}]] != T.
  const auto s = geometric_spectrum(q(1, 2), 4);
  auto u = AlgebraElement<Surd>::from_symbol(s, std::vector<Surd>(4, Surd(q(1))));
  EXPECT_GT(unit_residual(u, s), 0.1);
}

TEST(UnitApproximation, ZeroElementResidualIsNormOfT) {
  const auto s = geometric_spectrum(q(1, 2), 4);
  const auto zero = AlgebraElement<Surd>::from_symbol(s, std::vector<Surd>(4, Surd(q(0))));
  EXPECT_NEAR(unit_residual(zero, s), operator_norm(build_T<Surd>(s)), 1e-15);
}

TEST(UnitApproximation, ResidualsDecreaseAndNormsGrow) {
  const auto s = geometric_spectrum(q(1, 2), 16);
  const auto rep = unit_approximation_T(s, kDegrees);
  EXPECT_TRUE(rep.verdict("residual_decreasing"));
  ASSERT_EQ(rep.annotations().size(), 1u);
  EXPECT_EQ(rep.annotations().front().first, "u_norm_growth");
  EXPECT_GT(rep.annotations().front().second, 1.0);
}

TEST(BaiDefect, JordanTwoIsOneForAnyBound) {
  Eigen::MatrixXd jq = Eigen::MatrixXd::Zero(2, 2);
  jq(0, 1) = 1;
  for (double c : {0.5, 10.0, 100.0, 1000.0}) EXPECT_NEAR(bai_defect(jq, c), 1.0, 1e-9);
}

TEST(BaiDefect, IdempotentScalarHasZeroDefect) {
  const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
  const auto d = bai_defect_detail(one, 1.0);
  EXPECT_NEAR(d.defect, 0.0, 1e-12);
  EXPECT_LE(d.u_norm, 1.0 + 1e-12);
  // Below C = 1 the best u = C Q leaves 1 - C.
  EXPECT_NEAR(bai_defect(one, 0.25), 0.75, 1e-9);
}

TEST(BaiDefect, JordanThreeHasBoundIndependentFloor) {
  Eigen::MatrixXd j3 = Eigen::MatrixXd::Zero(3, 3);
  j3(0, 1) = j3(1, 2) = 1;
  // Oracle: u = aJ + bJ^2 gives Qu - Q = aJ^2 - J; scan a over [-C, C].
  auto oracle_defect = [&](double c) {
    double best = INFINITY;
    for (int i = -2000; i <= 2000; ++i) {
      const double a = c * i / 2000.0;
      if (oracle::svd_norm(a * j3) > c) continue;
      best = std::min(best, oracle::svd_norm(a * j3 * j3 - j3));
    }
    return best;
  };
  for (double c : {10.0, 1000.0}) {
    const double d = bai_defect(j3, c);
    EXPECT_GT(d, 0.0);
    EXPECT_NEAR(d, oracle_defect(c), 1e-6);
    EXPECT_GE(d, 1.0 - 1e-9);
  }
}

TEST(BaiDefectProperty, DiagonalizableInvertibleGeneratorsHaveSmallDefect) {
  oracle::Gen gen(91);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = gen.reals(3, 0.5, 2.0);
    Eigen::MatrixXd q3 = Eigen::MatrixXd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) q3(i, i) = d[static_cast<std::size_t>(i)] + i;  // distinct entries
    EXPECT_LE(bai_defect(q3, 1e3), 1e-6);
  }
}

TEST(BaiDefect, RejectsBadInput) {
  EXPECT_THROW(bai_defect(Eigen::MatrixXd::Zero(2, 3), 1.0), std::invalid_argument);
  EXPECT_THROW(bai_defect(Eigen::MatrixXd::Identity(2, 2), 0.0), std::invalid_argument);
}
