#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amenalab/polynomial.hpp"
#include "amenalab/rational.hpp"
#include "amenalab/spectrum.hpp"

namespace amenalab {

inline Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

/// Generalized smoothstep S_r: 0 at t = 0, 1 at t = 1, first r derivatives
/// vanishing at both ends. S_1(t) = 3t^2 - 2t^3.
inline Rational smoothstep(unsigned grade, const Rational& t) {
  if (t <= 0) return Rational(0);
  if (t >= 1) return Rational(1);
  const Rational s = 1 - t;
  Rational sum(0), s_pow(1);
  for (unsigned j = 0; j <= grade; ++j) {
    sum += binomial(grade + j, j) * s_pow;
    s_pow *= s;
  }
  return pow(t, grade + 1) * sum;
}

/// S_r'(t) = (2r+1) C(2r, r) t^r (1-t)^r on [0, 1], 0 outside.
inline Rational smoothstep_derivative(unsigned grade, const Rational& t) {
  if (t <= 0 || t >= 1) return Rational(0);
  return Rational(2 * grade + 1) * binomial(2 * grade, grade) * pow(t * (1 - t), grade);
}

/// A function on [lo, hi] with exact rational values, input to the approximation schemes.
struct Approximand {
  Rational lo;
  Rational hi;
  std::function<Rational(const Rational&)> value;
};

/// The notch f_n on [lambda_n - lambda_1, lambda_n]: 0 at the origin, 1 outside
/// (-delta, delta), and a C^grade smoothstep in |z|/delta between.
///
/// delta never exceeds the distance from 0 to the nearest other shifted
/// spectrum point lambda_n - lambda_m (or lambda_n itself), so f_n is 1 at
/// every shifted spectrum point except the origin.
class NotchFunction {
 public:
  static constexpr unsigned kDefaultGrade = 4;

  NotchFunction(Rational lo, Rational hi, Rational half_width, unsigned grade = kDefaultGrade)
      : lo_(std::move(lo)), hi_(std::move(hi)), delta_(std::move(half_width)), grade_(grade) {
    if (!(lo_ < hi_)) throw std::invalid_argument("notch interval must be non-degenerate");
    if (!(delta_ > 0)) throw std::invalid_argument("notch half-width must be positive");
    if (grade_ < 1) throw std::invalid_argument("notch smoothness grade must be at least 1");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const Rational& half_width() const { return delta_; }
  unsigned grade() const { return grade_; }

  Rational operator()(const Rational& z) const { return smoothstep(grade_, abs(z) / delta_); }

  Rational derivative(const Rational& z) const {
    const Rational d = smoothstep_derivative(grade_, abs(z) / delta_) / delta_;
    return z < 0 ? Rational(-d) : d;
  }

  /// sup |f'| = S_r'(1/2) / delta.
  Rational derivative_sup() const { return smoothstep_derivative(grade_, make_rational(1, 2)) / delta_; }

  Approximand approximand() const {
    return Approximand{lo_, hi_, [f = *this](const Rational& z) { return f(z); }};
  }

 private:
  Rational lo_, hi_, delta_;
  unsigned grade_;
};

/// f_n for the character index n (1-based).
inline NotchFunction notch(std::size_t n, const SpectrumSequence& spectrum,
                           unsigned grade = NotchFunction::kDefaultGrade) {
  const std::size_t m = spectrum.size();
  if (n < 1 || n > m)
    throw std::out_of_range("notch index " + std::to_string(n) + " outside 1.." + std::to_string(m));
  const Rational& ln = spectrum.lambda(n);
  // Gap to the right neighbour; for n = M the neighbour is the point 0 of the spectrum.
  Rational delta = n < m ? Rational(ln - spectrum.lambda(n + 1)) : ln;
  if (n > 1) delta = std::min(delta, Rational(spectrum.lambda(n - 1) - ln));
  const Rational lo = ln - spectrum.lambda(1);
  return NotchFunction(lo, ln, delta, grade);
}

/// Notch for the unit approximation of A_T itself: centred at 0 on
/// [0, lambda_1] with half-width clamp(lambda_1 (8/k)^2, lambda_M, lambda_1).
inline NotchFunction unit_notch(const SpectrumSequence& spectrum, unsigned degree,
                                unsigned grade = NotchFunction::kDefaultGrade) {
  const Rational& l1 = spectrum.lambda(1);
  const Rational ratio = make_rational(8, static_cast<long>(std::max(degree, 1u)));
  Rational delta = l1 * ratio * ratio;
  delta = std::clamp(delta, spectrum.tail_bound(), l1);
  return NotchFunction(Rational(0), l1, delta, grade);
}

enum class ApproximationScheme { chebyshev, bernstein };

inline std::string to_string(ApproximationScheme s) {
  return s == ApproximationScheme::chebyshev ? "chebyshev" : "bernstein";
}

inline ApproximationScheme parse_scheme(const std::string& name) {
  if (name == "chebyshev") return ApproximationScheme::chebyshev;
  if (name == "bernstein") return ApproximationScheme::bernstein;
  throw ValidationError("scheme", "unknown approximation scheme '" + name + "'");
}

/// Bernstein polynomial of degree k of f on [lo, hi], exact.
inline RationalPolynomial bernstein_polynomial(const Approximand& f, unsigned degree) {
  const Rational width = f.hi - f.lo;
  std::vector<Rational> diffs(degree + 1);
  for (unsigned j = 0; j <= degree; ++j) diffs[j] = f.value(f.lo + width * Rational(j) / Rational(degree));
  // B_k f(t) = sum_i C(k, i) Delta^i f_0 t^i.
  std::vector<Rational> coeffs(degree + 1);
  for (unsigned i = 0; i <= degree; ++i) {
    coeffs[i] = binomial(degree, i) * diffs[0];
    for (unsigned j = 0; j + i < degree; ++j) diffs[j] = diffs[j + 1] - diffs[j];
  }
  const RationalPolynomial in_t(std::move(coeffs));
  return in_t.compose_affine(Rational(-f.lo / width), Rational(1 / width));
}

/// Chebyshev points of the first kind on [lo, hi], rounded to doubles and then
/// taken as exact dyadic rationals.
inline std::vector<Rational> chebyshev_nodes(const Rational& lo, const Rational& hi, unsigned degree) {
  const Rational mid = (lo + hi) / 2;
  const Rational half = (hi - lo) / 2;
  std::vector<Rational> nodes;
  nodes.reserve(degree + 1);
  for (unsigned j = 0; j <= degree; ++j) {
    const double c = std::cos(std::numbers::pi * (2.0 * j + 1.0) / (2.0 * (degree + 1.0)));
    nodes.push_back(mid + half * Rational(c));
  }
  return nodes;
}

/// Exact interpolant of f at the given distinct nodes, in monomial form.
inline RationalPolynomial interpolate(const std::vector<Rational>& nodes, const std::vector<Rational>& values) {
  const std::size_t n = nodes.size();
  if (values.size() != n || n == 0) throw std::invalid_argument("interpolate: node/value size mismatch");
  std::vector<Rational> dd(values);
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      const Rational gap = nodes[i] - nodes[i - level];
      if (gap == 0) throw std::invalid_argument("interpolate: repeated node");
      dd[i] = (dd[i] - dd[i - 1]) / gap;
    }
  RationalPolynomial p{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) p = p * RationalPolynomial{Rational(-nodes[i]), Rational(1)} + RationalPolynomial{dd[i]};
  return p;
}

/// Chebyshev interpolant at the first-kind points of [lo, hi].
///
/// The series coefficients come from a floating DCT of the samples; the
/// series sum_k c_k T_k(t(z)) is then expanded exactly, so the result is an
/// exact polynomial whose coefficients stay a few hundred bits long. (Exact
/// Newton differences on rounded nodes reach ~1e5 bits at degree 64.)
inline RationalPolynomial chebyshev_interpolant(const Approximand& f, unsigned degree) {
  const std::size_t n = degree + 1;
  const Rational mid = (f.lo + f.hi) / 2;
  const Rational half = (f.hi - f.lo) / 2;
  std::vector<double> samples(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = std::cos(std::numbers::pi * (2.0 * j + 1.0) / (2.0 * n));
    samples[j] = f.value(mid + half * Rational(x)).get_d();
  }
  // t(z) = (z - mid) / half maps [lo, hi] onto [-1, 1].
  const RationalPolynomial t{Rational(-mid / half), Rational(1 / half)};
  RationalPolynomial prev{Rational(1)}, cur = t, p;
  for (std::size_t k = 0; k < n; ++k) {
    double c = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      c += samples[j] * std::cos(std::numbers::pi * static_cast<double>(k) * (2.0 * j + 1.0) / (2.0 * n));
    c *= (k == 0 ? 1.0 : 2.0) / static_cast<double>(n);
    const RationalPolynomial& tk = k == 0 ? prev : cur;
    p += tk * Rational(c);
    if (k >= 1) {
      RationalPolynomial next = RationalPolynomial{Rational(2)} * t * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
  return p;
}

/// Polynomial p with p(0) = 0 whose values and first derivatives converge
/// uniformly to those of f on [lo, hi] as the degree grows. The raw
/// approximant is shifted by its value at 0.
inline RationalPolynomial approximate_with_derivative(const Approximand& f, unsigned degree,
                                                      ApproximationScheme scheme = ApproximationScheme::chebyshev) {
  if (degree < 2) throw std::invalid_argument("approximation degree must be at least 2");
  RationalPolynomial raw =
      scheme == ApproximationScheme::bernstein ? bernstein_polynomial(f, degree) : chebyshev_interpolant(f, degree);
  RationalPolynomial p = raw - RationalPolynomial{raw.constant_term()};
  p.tag_as_symbol();
  return p;
}

inline RationalPolynomial approximate_with_derivative(const NotchFunction& f, unsigned degree,
                                                      ApproximationScheme scheme = ApproximationScheme::chebyshev) {
  return approximate_with_derivative(f.approximand(), degree, scheme);
}

/// Finite point set on [lo, hi]: a uniform grid (endpoints included) plus
/// optional extra points inside the interval.
struct IntervalDomain {
  static constexpr std::size_t kDefaultResolution = 4096;
  static constexpr std::size_t kMinimumResolution = 1000;

  Rational lo;
  Rational hi;
  std::size_t resolution = kDefaultResolution;
  std::vector<Rational> extra;

  std::vector<Rational> points() const {
    if (resolution < kMinimumResolution)
      throw std::invalid_argument("interval sup-norm needs at least 1000 grid points");
    if (hi < lo) throw std::invalid_argument("interval endpoints out of order");
    std::vector<Rational> pts;
    pts.reserve(resolution + 1 + extra.size());
    const Rational width = hi - lo;
    for (std::size_t i = 0; i <= resolution; ++i)
      pts.push_back(lo + width * Rational(static_cast<long>(i)) / Rational(static_cast<long>(resolution)));
    for (const auto& x : extra)
      if (lo <= x && x <= hi) pts.push_back(x);
    return pts;
  }
};

/// {0} together with the stored spectrum values.
inline std::vector<Rational> spectrum_points(const SpectrumSequence& spectrum) {
  std::vector<Rational> pts{Rational(0)};
  pts.insert(pts.end(), spectrum.values().begin(), spectrum.values().end());
  return pts;
}

/// Exact sup over {0} and the spectrum.
inline double sup_norm(const RationalPolynomial& p, const SpectrumSequence& spectrum) {
  Rational best(0);
  for (const auto& z : spectrum_points(spectrum)) best = std::max(best, abs(p(z)));
  return best.get_d();
}

inline double sup_norm(const RationalPolynomial& p, const IntervalDomain& domain) {
  const AccurateEvaluator eval(p);
  double best = 0.0;
  for (const auto& z : domain.points()) best = std::max(best, std::abs(eval(z)));
  return best;
}

inline double sup_norm(const NotchFunction& f, const SpectrumSequence& spectrum) {
  Rational best(0);
  for (const auto& z : spectrum_points(spectrum)) best = std::max(best, abs(f(z)));
  return best.get_d();
}

inline double sup_norm(const NotchFunction& f, const IntervalDomain& domain) {
  Rational best(0);
  for (const auto& z : domain.points()) best = std::max(best, abs(f(z)));
  return best.get_d();
}

/// Grid errors sup|p - f| and sup|p' - f'| on the notch interval.
struct ApproximationError {
  double value = 0.0;
  double derivative = 0.0;
};

inline ApproximationError approximation_error(const RationalPolynomial& p, const NotchFunction& f,
                                              std::size_t resolution = IntervalDomain::kDefaultResolution) {
  const AccurateEvaluator pe(p), de(p.derivative());
  ApproximationError err;
  for (const auto& z : IntervalDomain{f.lo(), f.hi(), resolution, {}}.points()) {
    err.value = std::max(err.value, std::abs(pe(z) - f(z).get_d()));
    err.derivative = std::max(err.derivative, std::abs(de(z) - f.derivative(z).get_d()));
  }
  return err;
}

/// Both sides of the mean-value bound for q = divide_shifted(p, lambda_n):
///   sup_sigma |q|  <=  sup |p|  +  lambda_n * sup |p'|,
/// the right-hand sups taken over [lambda_n - lambda_1, lambda_n], which
/// contains lambda_n - z for every spectrum point z.
struct MvtReport {
  double q_sup = 0.0;
  double p_sup = 0.0;
  double dp_sup = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool holds = false;
};

inline MvtReport mvt_bound_check(const RationalPolynomial& p, const RationalPolynomial& q, const Rational& lambda_n,
                                 const SpectrumSequence& spectrum, double tolerance = 1e-9) {
  IntervalDomain domain{lambda_n - spectrum.lambda(1), lambda_n, IntervalDomain::kDefaultResolution, {}};
  for (const auto& z : spectrum_points(spectrum)) domain.extra.push_back(lambda_n - z);
  MvtReport r;
  r.q_sup = sup_norm(q, spectrum);
  r.p_sup = sup_norm(p, domain);
  r.dp_sup = sup_norm(p.derivative(), domain);
  r.bound = r.p_sup + lambda_n.get_d() * r.dp_sup;
  r.slack = r.bound - r.q_sup;
  r.holds = r.q_sup <= r.bound + tolerance * (1.0 + r.bound);
  return r;
}

}  // namespace amenalab
