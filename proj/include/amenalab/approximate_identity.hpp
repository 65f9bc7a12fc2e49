#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "amenalab/algebra.hpp"
#include "amenalab/approximation.hpp"
#include "amenalab/operators.hpp"
#include "amenalab/polynomial.hpp"
#include "amenalab/report.hpp"
#include "amenalab/spectrum.hpp"

namespace amenalab {

struct ApproximateIdentityOptions {
  ApproximationScheme scheme = ApproximationScheme::chebyshev;
  unsigned notch_grade = NotchFunction::kDefaultGrade;
  /// Residual threshold at the top degree.
  double tolerance = 1e-3;
  /// Allowed increase between consecutive residuals.
  double monotone_slack = 1e-12;
  double mvt_tolerance = 1e-9;
  /// Certified element bounds must stay below this multiple of the limiting notch bound.
  double uniform_factor = 2.0;
};

/// ||X u - X|| and ||u|| for u = p(X), X = lambda_n I - T, evaluated exactly.
struct ResidualPair {
  double residual = 0.0;
  double u_norm = 0.0;
};

/// lambda_n I - T on the truncation.
inline ExactBlock shifted_T(std::size_t n, const SpectrumSequence& spectrum) {
  return ExactBlock::scalar(spectrum.size(), Surd(spectrum.lambda(n))) - build_T<Surd>(spectrum);
}

inline ResidualPair approximate_identity_residual(std::size_t n, const SpectrumSequence& spectrum,
                                                  const RationalPolynomial& p) {
  const ExactBlock x = shifted_T(n, spectrum);
  const ExactBlock u = polynomial_of(x, p);
  return ResidualPair{operator_norm(x * u - x), operator_norm(u)};
}

/// Output of the approximate-identity pipeline for one character index.
struct ApproximateIdentityRun {
  ConvergenceReport report;
  std::vector<unsigned> degrees;
  std::vector<RationalPolynomial> p;
  std::vector<RationalPolynomial> q;
  std::vector<MvtReport> mvt;
  /// sup|f_n| + sqrt(lambda_1) sup|f_n'|: the bound the certified bounds converge to.
  double limit_bound = 0.0;
};

inline void validate_degrees(const std::vector<unsigned>& degrees) {
  if (degrees.empty()) throw ValidationError("degrees", "list must not be empty");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 2) throw ValidationError("degrees", "every degree must be at least 2");
    if (i > 0 && degrees[i] <= degrees[i - 1])
      throw ValidationError("degrees", "not strictly increasing at position " + std::to_string(i + 1));
  }
}

/// Recomputes the verdicts of an approximate-identity report from its rows.
inline void apply_approximate_identity_verdicts(ConvergenceReport& report, double monotone_slack,
                                                double uniform_cap, bool mvt_ok) {
  const auto residual = report.column_values("residual");
  const auto u_norm = report.column_values("u_norm");
  const auto u_bound = report.column_values("u_bound");
  bool monotone = true;
  for (std::size_t i = 1; i < residual.size(); ++i)
    if (residual[i] > residual[i - 1] + monotone_slack) monotone = false;
  bool bounded = true;
  for (std::size_t i = 0; i < u_norm.size(); ++i) {
    if (!(u_norm[i] <= u_bound[i] * (1.0 + 1e-12))) bounded = false;
    if (!(u_bound[i] <= uniform_cap)) bounded = false;
  }
  report.set_verdict("threshold_met", !residual.empty() && residual.back() < report.tolerance());
  report.set_verdict("bounded", bounded);
  report.set_verdict("monotone", monotone);
  report.set_verdict("mean_value_bound", mvt_ok);
}

/// Polynomial approximate identity p_k(lambda_n I - T) of the algebra generated by lambda_n I - T.
///
/// Per degree k: p_k approximates the notch f_n with its derivative,
/// u_k = p_k(lambda_n I - T) is assembled exactly from block powers, and
/// q_k = divide_shifted(p_k, lambda_n) is checked against the mean-value bound.
/// The element bound u_bound = sup_eig |p_k| + sqrt(lambda_1) sup |p_k'| covers
/// the diagonal (eigenvalue) part and the off-diagonal divided differences.
inline ApproximateIdentityRun approximate_identity_sequence(std::size_t n, const SpectrumSequence& spectrum,
                                                           const std::vector<unsigned>& degrees,
                                                           const ApproximateIdentityOptions& options = {}) {
  if (n < 1 || n > spectrum.size())
    throw std::out_of_range("character index " + std::to_string(n) + " outside 1.." + std::to_string(spectrum.size()));
  validate_degrees(degrees);
  const Rational& ln = spectrum.lambda(n);
  const NotchFunction f = notch(n, spectrum, options.notch_grade);
  const double sqrt_l1 = std::sqrt(spectrum.lambda_d(1));

  ApproximateIdentityRun run;
  run.degrees = degrees;
  run.limit_bound = 1.0 + sqrt_l1 * f.derivative_sup().get_d();
  run.report = ConvergenceReport("character_n" + std::to_string(n), "index",
                                 {"residual", "u_norm", "q_bound", "u_bound"}, 3, options.tolerance);

  std::vector<Rational> eigenvalues{ln};
  for (const auto& l : spectrum.values()) eigenvalues.push_back(ln - l);
  IntervalDomain interval{f.lo(), f.hi(), IntervalDomain::kDefaultResolution, eigenvalues};

  bool mvt_ok = true;
  for (unsigned k : degrees) {
    RationalPolynomial p = approximate_with_derivative(f, k, options.scheme);
    RationalPolynomial q = divide_shifted(p, ln);
    const MvtReport mvt = mvt_bound_check(p, q, ln, spectrum, options.mvt_tolerance);
    mvt_ok = mvt_ok && mvt.holds;

    const ResidualPair rp = approximate_identity_residual(n, spectrum, p);
    Rational eig_sup(0);
    for (const auto& z : eigenvalues) eig_sup = std::max(eig_sup, abs(p(z)));
    const double u_bound = eig_sup.get_d() + sqrt_l1 * sup_norm(p.derivative(), interval);

    run.report.add_row(k, {rp.residual, rp.u_norm, mvt.bound, u_bound});
    run.p.push_back(std::move(p));
    run.q.push_back(std::move(q));
    run.mvt.push_back(mvt);
  }
  apply_approximate_identity_verdicts(run.report, options.monotone_slack, options.uniform_factor * run.limit_bound,
                                      mvt_ok);
  return run;
}

/// ||T u - T|| for an element u of the algebra.
template <class Scalar>
double unit_residual(const AlgebraElement<Scalar>& u, const SpectrumSequence& spectrum) {
  const BlockOperator<Scalar> t = build_T<Scalar>(spectrum);
  return operator_norm(t * u.block() - t);
}

/// sum_{n <= M} E_n: the unit of the truncated algebra (symbol lambda^{-1/2}).
template <class Scalar>
AlgebraElement<Scalar> truncation_unit(const SpectrumSequence& spectrum) {
  std::vector<Scalar> g;
  g.reserve(spectrum.size());
  for (const auto& l : spectrum.values())
    g.push_back(ScalarTraits<Scalar>::sqrt_of(l) / ScalarTraits<Scalar>::from_rational(l));
  return AlgebraElement<Scalar>::from_symbol(spectrum, std::move(g));
}

/// Polynomial unit approximation u_k = p_k(T) for the algebra generated by T.
///
/// Rows record ||T u_k - T|| and ||u_k||. The verdict covers the residual
/// decrease only: ||u_k|| ~ |p_k(lambda)| sqrt(1/lambda + 1) grows as the notch
/// resolves smaller spectrum points, and the growth factor is annotated.
inline ConvergenceReport unit_approximation_T(const SpectrumSequence& spectrum, const std::vector<unsigned>& degrees,
                                              const ApproximateIdentityOptions& options = {}) {
  validate_degrees(degrees);
  ConvergenceReport report("character_unit", "index", {"residual", "u_norm"}, 2, options.tolerance);
  const ExactBlock t = build_T<Surd>(spectrum);
  for (unsigned k : degrees) {
    const NotchFunction f = unit_notch(spectrum, k, options.notch_grade);
    const RationalPolynomial p = approximate_with_derivative(f, k, options.scheme);
    const ExactBlock u = polynomial_of(t, p);
    report.add_row(k, {operator_norm(t * u - t), operator_norm(u)});
  }
  const auto residual = report.column_values("residual");
  bool decreasing = true;
  for (std::size_t i = 1; i < residual.size(); ++i)
    if (!(residual[i] < residual[i - 1])) decreasing = false;
  report.set_verdict("residual_decreasing", decreasing);
  const auto u_norm = report.column_values("u_norm");
  report.set_annotation("u_norm_growth", u_norm.back() / u_norm.front());
  return report;
}

/// Result of the norm-constrained defect minimization.
struct BaiDefect {
  double defect = 0.0;
  double u_norm = 0.0;
  std::vector<double> coefficients;  // u = sum_i c_i Q^{i+1}
};

/// min over u in span{Q, Q^2, ..., Q^n} with ||u|| <= C of ||Q u - Q|| (operator 2-norm).
///
/// Starts from the Frobenius least-squares minimizer (ridge-penalized with a
/// bisected penalty when it leaves the ball) and refines with a compass
/// search on the convex 2-norm objective, projecting radially onto the ball.
inline BaiDefect bai_defect_detail(const Eigen::MatrixXd& q, double bound) {
  if (q.rows() != q.cols()) throw std::invalid_argument("bai_defect: generator must be square");
  if (!(bound > 0)) throw std::invalid_argument("bai_defect: bound must be positive");
  const Eigen::Index n = q.rows();
  std::vector<Eigen::MatrixXd> powers;
  Eigen::MatrixXd pw = q;
  for (Eigen::Index i = 0; i < std::max<Eigen::Index>(n, 1); ++i) {
    powers.push_back(pw);
    pw = pw * q;
  }
  const auto d = static_cast<Eigen::Index>(powers.size());

  auto element = [&](const Eigen::VectorXd& c) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < d; ++i) u += c(i) * powers[static_cast<std::size_t>(i)];
    return u;
  };
  auto objective = [&](const Eigen::VectorXd& c) { return dense_spectral_norm(q * element(c) - q); };
  auto project = [&](Eigen::VectorXd c) {
    const double un = dense_spectral_norm(element(c));
    if (un > bound) c *= bound / un;
    return c;
  };

  // Frobenius least squares: columns vec(Q^{i+2}) against vec(Q).
  Eigen::MatrixXd a(n * n, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::MatrixXd col = q * powers[static_cast<std::size_t>(i)];
    a.col(i) = Eigen::Map<const Eigen::VectorXd>(col.data(), n * n);
  }
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  Eigen::VectorXd c = a.completeOrthogonalDecomposition().solve(b);
  if (dense_spectral_norm(element(c)) > bound) {
    auto ridge = [&](double mu) {
      const Eigen::MatrixXd lhs = a.transpose() * a + mu * Eigen::MatrixXd::Identity(d, d);
      return Eigen::VectorXd(lhs.ldlt().solve(a.transpose() * b));
    };
    double lo = -12.0, hi = 12.0;  // log10 of the penalty
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (dense_spectral_norm(element(ridge(std::pow(10.0, mid)))) > bound)
        lo = mid;
      else
        hi = mid;
    }
    c = ridge(std::pow(10.0, hi));
  }
  c = project(c);

  double best = objective(c);
  double step = std::max(1.0, c.cwiseAbs().maxCoeff());
  while (step > 1e-13) {
    bool improved = false;
    for (Eigen::Index i = 0; i < d && !improved; ++i)
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd trial = c;
        trial(i) += sign * step;
        trial = project(trial);
        const double val = objective(trial);
        if (val < best - 1e-15) {
          best = val;
          c = trial;
          improved = true;
          break;
        }
      }
    if (!improved) step *= 0.5;
  }

  BaiDefect out;
  out.defect = best;
  out.u_norm = dense_spectral_norm(element(c));
  out.coefficients.assign(c.data(), c.data() + c.size());
  return out;
}

inline double bai_defect(const Eigen::MatrixXd& generator, double bound) {
  return bai_defect_detail(generator, bound).defect;
}

}  // namespace amenalab
