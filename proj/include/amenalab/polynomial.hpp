#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "amenalab/rational.hpp"

namespace amenalab {

/// Raised when an identity that holds by construction fails; reaching it is a bug.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Dense polynomial c_0 + c_1 z + ... + c_d z^d, coefficients in ascending
/// degree with no trailing zeros (the zero polynomial has no coefficients).
///
/// A polynomial tagged as an algebra symbol carries the extra invariant
/// c_0 = 0: only such polynomials define elements of the non-unital algebra
/// generated by an operator.
template <class Coeff>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Coeff> coefficients) : c_(std::move(coefficients)) { trim(); }
  Polynomial(std::initializer_list<Coeff> coefficients) : c_(coefficients) { trim(); }

  static Polynomial monomial(std::size_t degree, Coeff coefficient = Coeff(1)) {
    std::vector<Coeff> c(degree + 1, Coeff(0));
    c[degree] = std::move(coefficient);
    return Polynomial(std::move(c));
  }

  /// Polynomial tagged as an algebra symbol; rejects a nonzero constant term.
  static Polynomial symbol(std::vector<Coeff> coefficients) {
    Polynomial p(std::move(coefficients));
    p.tag_as_symbol();
    return p;
  }

  void tag_as_symbol() {
    if (!c_.empty() && c_[0] != Coeff(0))
      throw std::invalid_argument("algebra symbols must vanish at 0");
    symbol_ = true;
  }
  bool is_symbol() const { return symbol_; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Coeff>& coefficients() const { return c_; }
  Coeff coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }
  Coeff constant_term() const { return coefficient(0); }

  /// Horner evaluation in the argument's arithmetic.
  template <class X>
  X operator()(const X& z) const {
    X acc = X(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= z;
      acc += scalar_cast<X>(*it);
    }
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Coeff> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Coeff(static_cast<long>(i)) * c_[i];
    return Polynomial(std::move(d));
  }

  /// z -> p(shift + scale*z): Taylor shift by synthetic division, then scaling.
  Polynomial compose_affine(const Coeff& shift, const Coeff& scale) const {
    std::vector<Coeff> c = c_;
    const std::size_t n = c.size();
    if (shift != Coeff(0))
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) c[j] += shift * c[j + 1];
    Coeff power(1);
    for (std::size_t j = 0; j < n; ++j) {
      c[j] *= power;
      power *= scale;
    }
    return Polynomial(std::move(c));
  }

  /// Exact division by z; the constant term must vanish.
  Polynomial divide_by_z() const {
    if (c_.empty()) return Polynomial();
    if (c_[0] != Coeff(0)) throw InternalConsistencyError("division by z leaves a nonzero remainder");
    return Polynomial(std::vector<Coeff>(c_.begin() + 1, c_.end()));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return Polynomial();
    std::vector<Coeff> c(a.c_.size() + b.c_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Coeff(0)) c_.pop_back();
  }

  std::vector<Coeff> c_;
  bool symbol_ = false;
};

using RationalPolynomial = Polynomial<Rational>;

/// The q with  lambda*p(lambda) - (lambda - z)*p(lambda - z) = z*q(z).
///
/// The left side vanishes at z = 0, so the division is exact; a nonzero
/// remainder raises InternalConsistencyError.
template <class Coeff>
Polynomial<Coeff> divide_shifted(const Polynomial<Coeff>& p, const Coeff& lambda) {
  const Polynomial<Coeff> z_times_p = Polynomial<Coeff>::monomial(1) * p;
  Polynomial<Coeff> numerator = Polynomial<Coeff>{Coeff(lambda * p(lambda))} - z_times_p.compose_affine(lambda, Coeff(-1));
  return numerator.divide_by_z();
}

/// Accurate floating evaluation of a rational polynomial.
///
/// High-degree interpolants have monomial coefficients whose alternating
/// magnitudes cancel far beyond double precision, so evaluation runs in
/// multiprecision floating point and only the result is rounded.
class AccurateEvaluator {
 public:
  static constexpr mp_bitcnt_t kDefaultPrecision = 1024;

  explicit AccurateEvaluator(const RationalPolynomial& p, mp_bitcnt_t precision = kDefaultPrecision)
      : precision_(precision) {
    coeffs_.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) coeffs_.emplace_back(c, precision_);
  }

  double operator()(double z) const {
    mpf_class x(z, precision_), acc(0, precision_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc.get_d();
  }

  double operator()(const Rational& z) const {
    mpf_class x(z, precision_), acc(0, precision_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc.get_d();
  }

 private:
  mp_bitcnt_t precision_;
  std::vector<mpf_class> coeffs_;
};

/// JSON form: array of exact rational strings in ascending degree, ["0", "6", "-8"].
inline nlohmann::json to_json(const RationalPolynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : p.coefficients()) out.push_back(c.get_str());
  if (out.empty()) out.push_back("0");
  return out;
}

inline RationalPolynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
  std::vector<Rational> c;
  for (const auto& e : j) {
    if (!e.is_string()) throw std::invalid_argument("polynomial coefficients must be rational strings");
    c.push_back(parse_rational(e.get<std::string>()));
  }
  return RationalPolynomial(std::move(c));
}

inline RationalPolynomial polynomial_from_json(const std::string& text) {
  return polynomial_from_json(nlohmann::json::parse(text));
}

}  // namespace amenalab
