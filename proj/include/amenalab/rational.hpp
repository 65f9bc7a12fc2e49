#pragma once

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace amenalab {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

/// Parses "p/q", an integer, or a decimal literal such as "0.3" or "-1.5e-3"
/// into the exact rational it denotes.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    digits.push_back(s[i]);
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      digits.push_back(s[i]);
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad rational literal '" + s + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    const char* first = s.data() + i;
    long e = 0;
    if (first < s.data() + s.size() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), e);
    if (ec != std::errc() || ptr == first) throw std::invalid_argument("bad exponent in '" + s + "'");
    i = static_cast<std::size_t>(ptr - s.data());
    exponent += e;
  }
  if (i != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");

  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

/// Exact rational for the shortest decimal that round-trips `x` (0.3 -> 3/10).
inline Rational rational_from_decimal(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::invalid_argument("cannot format value");
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1), b(base);
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

/// True when q = s^2 for a rational s; the root is written to `root` if given.
inline bool is_rational_square(const Rational& q, Rational* root = nullptr) {
  if (q < 0) return false;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
    return false;
  if (root != nullptr) {
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    *root = Rational(n, d);
    root->canonicalize();
  }
  return true;
}

/// Element a + b*sqrt(r) of the real quadratic field Q(sqrt(r)), r >= 0.
///
/// Every exact computation in the library stays inside one such field per
/// diagonal index (the index-n entries only ever involve sqrt(lambda_n)), so
/// arithmetic between surds with different non-trivial radicands is an error.
/// The representation is canonical: b == 0 implies r == 0, and r is never a
/// rational square, which makes structural equality coincide with equality of
/// values.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Surd(long a) : a_(a) {}             // NOLINT(google-explicit-constructor)
  Surd(const Rational& a, const Rational& b, const Rational& radicand) : a_(a), b_(b), r_(radicand) {
    if (r_ < 0) throw std::domain_error("negative radicand");
    canonicalize();
  }

  static Surd sqrt_of(const Rational& r) { return Surd(Rational(0), Rational(1), r); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Rational& radicand() const { return r_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(r_.get_d()); }

  Surd conjugate() const { return Surd(a_, -b_, r_); }

  /// a^2 - b^2 r, the field norm.
  Rational norm() const { return a_ * a_ - b_ * b_ * r_; }

  Surd operator-() const { return Surd(-a_, -b_, r_); }

  Surd& operator+=(const Surd& o) {
    const Rational r = common_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    r_ = r;
    canonicalize();
    return *this;
  }
  Surd& operator-=(const Surd& o) { return *this += -o; }
  Surd& operator*=(const Surd& o) {
    const Rational r = common_radicand(o);
    Rational a = a_ * o.a_ + b_ * o.b_ * r;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    r_ = r;
    canonicalize();
    return *this;
  }
  Surd& operator/=(const Surd& o) {
    const Rational n = o.norm();
    if (n == 0) throw std::domain_error("division by zero surd");
    Surd inv = o.conjugate();
    inv.a_ /= n;
    inv.b_ /= n;
    return *this *= inv;
  }

  friend Surd operator+(Surd x, const Surd& y) { return x += y; }
  friend Surd operator-(Surd x, const Surd& y) { return x -= y; }
  friend Surd operator*(Surd x, const Surd& y) { return x *= y; }
  friend Surd operator/(Surd x, const Surd& y) { return x /= y; }

  friend bool operator==(const Surd& x, const Surd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.r_ == y.r_);
  }
  friend bool operator!=(const Surd& x, const Surd& y) { return !(x == y); }

  std::string to_string() const {
    if (b_ == 0) return a_.get_str();
    std::string s = a_ == 0 ? std::string() : a_.get_str() + (b_ > 0 ? "+" : "");
    return s + b_.get_str() + "*sqrt(" + r_.get_str() + ")";
  }

 private:
  Rational common_radicand(const Surd& o) const {
    if (b_ == 0) return o.r_;
    if (o.b_ == 0 || r_ == o.r_) return r_;
    throw std::domain_error("surd arithmetic across fields sqrt(" + r_.get_str() + ") and sqrt(" +
                            o.r_.get_str() + ")");
  }

  void canonicalize() {
    if (b_ == 0) {
      r_ = 0;
      return;
    }
    Rational root;
    if (is_rational_square(r_, &root)) {
      a_ += b_ * root;
      b_ = 0;
      r_ = 0;
    }
  }

  Rational a_{0};
  Rational b_{0};
  Rational r_{0};
};

inline double to_double(const Surd& s) { return s.to_double(); }

/// Uniform access to the scalar kinds the operator templates are instantiated
/// with: `double` (analysis tier) and `Surd` (exact tier).
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double sqrt_of(const Rational& q) { return std::sqrt(q.get_d()); }
  static double to_double(double x) { return x; }
  static double magnitude(double x) { return std::abs(x); }
  static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct ScalarTraits<Surd> {
  static Surd from_rational(const Rational& q) { return Surd(q); }
  static Surd sqrt_of(const Rational& q) { return Surd::sqrt_of(q); }
  static double to_double(const Surd& x) { return x.to_double(); }
  static double magnitude(const Surd& x) { return std::abs(x.to_double()); }
  static bool is_zero(const Surd& x) { return x.is_zero(); }
};

template <>
struct ScalarTraits<Rational> {
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static bool is_zero(const Rational& x) { return x == 0; }
};

/// Converts between the scalar kinds (exact where the target allows it).
template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<From, Rational>) {
    return ScalarTraits<To>::from_rational(x);
  } else {
    return static_cast<To>(x);
  }
}

}  // namespace amenalab
