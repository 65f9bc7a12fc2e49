#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "amenalab/polynomial.hpp"
#include "amenalab/rational.hpp"
#include "amenalab/spectrum.hpp"

namespace amenalab {

/// diag(d_1, ..., d_M). Diagonal operators of equal size commute and multiply entrywise.
template <class Scalar>
class DiagonalOperator {
 public:
  DiagonalOperator() = default;
  explicit DiagonalOperator(std::vector<Scalar> diag) : d_(std::move(diag)) {}

  static DiagonalOperator zero(std::size_t m) { return DiagonalOperator(std::vector<Scalar>(m, Scalar(0))); }
  static DiagonalOperator identity(std::size_t m) { return DiagonalOperator(std::vector<Scalar>(m, Scalar(1))); }
  static DiagonalOperator constant(std::size_t m, const Scalar& c) { return DiagonalOperator(std::vector<Scalar>(m, c)); }

  std::size_t size() const { return d_.size(); }
  const std::vector<Scalar>& entries() const { return d_; }
  const Scalar& operator[](std::size_t i) const { return d_[i]; }
  Scalar& operator[](std::size_t i) { return d_[i]; }

  bool is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](const Scalar& x) { return ScalarTraits<Scalar>::is_zero(x); });
  }

  /// max_n |d_n|, exact for a diagonal operator.
  double norm() const {
    double m = 0.0;
    for (const auto& x : d_) m = std::max(m, ScalarTraits<Scalar>::magnitude(x));
    return m;
  }

  template <class Other>
  DiagonalOperator<Other> cast() const {
    std::vector<Other> out;
    out.reserve(d_.size());
    for (const auto& x : d_) out.push_back(convert<Other>(x));
    return DiagonalOperator<Other>(std::move(out));
  }

  DiagonalOperator& operator+=(const DiagonalOperator& o) { return combine(o, [](Scalar& a, const Scalar& b) { a += b; }); }
  DiagonalOperator& operator-=(const DiagonalOperator& o) { return combine(o, [](Scalar& a, const Scalar& b) { a -= b; }); }
  DiagonalOperator& operator*=(const DiagonalOperator& o) { return combine(o, [](Scalar& a, const Scalar& b) { a *= b; }); }
  DiagonalOperator& operator*=(const Scalar& s) {
    for (auto& x : d_) x *= s;
    return *this;
  }

  friend DiagonalOperator operator+(DiagonalOperator a, const DiagonalOperator& b) { return a += b; }
  friend DiagonalOperator operator-(DiagonalOperator a, const DiagonalOperator& b) { return a -= b; }
  friend DiagonalOperator operator*(DiagonalOperator a, const DiagonalOperator& b) { return a *= b; }
  friend DiagonalOperator operator*(DiagonalOperator a, const Scalar& s) { return a *= s; }
  friend DiagonalOperator operator*(const Scalar& s, DiagonalOperator a) { return a *= s; }
  friend DiagonalOperator operator-(DiagonalOperator a) {
    for (auto& x : a.d_) x = -x;
    return a;
  }
  friend bool operator==(const DiagonalOperator& a, const DiagonalOperator& b) { return a.d_ == b.d_; }
  friend bool operator!=(const DiagonalOperator& a, const DiagonalOperator& b) { return !(a == b); }

 private:
  template <class To, class From>
  static To convert(const From& x) {
    if constexpr (std::is_same_v<From, Surd> && std::is_same_v<To, double>) {
      return x.to_double();
    } else {
      return scalar_cast<To>(x);
    }
  }

  template <class Op>
  DiagonalOperator& combine(const DiagonalOperator& o, Op op) {
    if (o.size() != size()) throw std::invalid_argument("diagonal operator dimension mismatch");
    for (std::size_t i = 0; i < d_.size(); ++i) op(d_[i], o.d_[i]);
    return *this;
  }

  std::vector<Scalar> d_;
};

/// 2M x 2M operator [[B11, B12], [B21, B22]] with diagonal M x M blocks.
template <class Scalar>
struct BlockOperator {
  using Diagonal = DiagonalOperator<Scalar>;

  Diagonal b11, b12, b21, b22;

  BlockOperator() = default;
  BlockOperator(Diagonal a11, Diagonal a12, Diagonal a21, Diagonal a22)
      : b11(std::move(a11)), b12(std::move(a12)), b21(std::move(a21)), b22(std::move(a22)) {
    const std::size_t m = b11.size();
    if (b12.size() != m || b21.size() != m || b22.size() != m)
      throw std::invalid_argument("block operator blocks must share one dimension");
  }

  static BlockOperator zero(std::size_t m) {
    return BlockOperator(Diagonal::zero(m), Diagonal::zero(m), Diagonal::zero(m), Diagonal::zero(m));
  }
  static BlockOperator identity(std::size_t m) {
    return BlockOperator(Diagonal::identity(m), Diagonal::zero(m), Diagonal::zero(m), Diagonal::identity(m));
  }
  /// c * I.
  static BlockOperator scalar(std::size_t m, const Scalar& c) {
    return BlockOperator(Diagonal::constant(m, c), Diagonal::zero(m), Diagonal::zero(m), Diagonal::constant(m, c));
  }

  std::size_t dimension() const { return b11.size(); }
  bool is_upper_triangular() const { return b21.is_zero(); }
  /// B11 = B21 = 0: the operator maps everything into the span of the second block column.
  bool is_column_block() const { return b11.is_zero() && b21.is_zero(); }

  template <class Other>
  BlockOperator<Other> cast() const {
    return BlockOperator<Other>(b11.template cast<Other>(), b12.template cast<Other>(), b21.template cast<Other>(),
                                b22.template cast<Other>());
  }

  /// Dense 2M x 2M matrix, ordering (first block coordinates, second block coordinates).
  Eigen::MatrixXd to_dense() const {
    const auto m = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto k = static_cast<std::size_t>(i);
      out(i, i) = ScalarTraits<Scalar>::to_double(b11[k]);
      out(i, m + i) = ScalarTraits<Scalar>::to_double(b12[k]);
      out(m + i, i) = ScalarTraits<Scalar>::to_double(b21[k]);
      out(m + i, m + i) = ScalarTraits<Scalar>::to_double(b22[k]);
    }
    return out;
  }

  BlockOperator& operator+=(const BlockOperator& o) {
    b11 += o.b11;
    b12 += o.b12;
    b21 += o.b21;
    b22 += o.b22;
    return *this;
  }
  BlockOperator& operator-=(const BlockOperator& o) {
    b11 -= o.b11;
    b12 -= o.b12;
    b21 -= o.b21;
    b22 -= o.b22;
    return *this;
  }
  BlockOperator& operator*=(const Scalar& s) {
    b11 *= s;
    b12 *= s;
    b21 *= s;
    b22 *= s;
    return *this;
  }

  friend BlockOperator operator+(BlockOperator a, const BlockOperator& b) { return a += b; }
  friend BlockOperator operator-(BlockOperator a, const BlockOperator& b) { return a -= b; }
  friend BlockOperator operator*(BlockOperator a, const Scalar& s) { return a *= s; }
  friend BlockOperator operator*(const Scalar& s, BlockOperator a) { return a *= s; }
  friend BlockOperator operator*(const BlockOperator& x, const BlockOperator& y) {
    return BlockOperator(x.b11 * y.b11 + x.b12 * y.b21, x.b11 * y.b12 + x.b12 * y.b22,
                         x.b21 * y.b11 + x.b22 * y.b21, x.b21 * y.b12 + x.b22 * y.b22);
  }
  friend bool operator==(const BlockOperator& a, const BlockOperator& b) {
    return a.b11 == b.b11 && a.b12 == b.b12 && a.b21 == b.b21 && a.b22 == b.b22;
  }
  friend bool operator!=(const BlockOperator& a, const BlockOperator& b) { return !(a == b); }
};

using ExactBlock = BlockOperator<Surd>;
using FloatBlock = BlockOperator<double>;
using ExactDiagonal = DiagonalOperator<Surd>;
using FloatDiagonal = DiagonalOperator<double>;

/// N = diag(lambda_1, ..., lambda_M).
template <class Scalar>
DiagonalOperator<Scalar> diagonal_N(const SpectrumSequence& spectrum) {
  std::vector<Scalar> d;
  d.reserve(spectrum.size());
  for (const auto& l : spectrum.values()) d.push_back(ScalarTraits<Scalar>::from_rational(l));
  return DiagonalOperator<Scalar>(std::move(d));
}

/// N^{1/2} = diag(sqrt(lambda_1), ..., sqrt(lambda_M)).
template <class Scalar>
DiagonalOperator<Scalar> diagonal_sqrt_N(const SpectrumSequence& spectrum) {
  std::vector<Scalar> d;
  d.reserve(spectrum.size());
  for (const auto& l : spectrum.values()) d.push_back(ScalarTraits<Scalar>::sqrt_of(l));
  return DiagonalOperator<Scalar>(std::move(d));
}

/// T = [[0, N^{1/2}], [0, N]] on the truncation.
template <class Scalar>
BlockOperator<Scalar> build_T(const SpectrumSequence& spectrum) {
  const std::size_t m = spectrum.size();
  return BlockOperator<Scalar>(DiagonalOperator<Scalar>::zero(m), diagonal_sqrt_N<Scalar>(spectrum),
                               DiagonalOperator<Scalar>::zero(m), diagonal_N<Scalar>(spectrum));
}

namespace detail {

template <class Scalar>
Scalar power(const Scalar& x, unsigned k) {
  Scalar result(1), b(x);
  while (k != 0) {
    if (k & 1u) result *= b;
    k >>= 1;
    if (k != 0) b *= b;
  }
  return result;
}

}  // namespace detail

/// X^k for upper block-triangular X = [[N1, N2], [0, N3]] with diagonal blocks:
/// [[N1^k, A_k N2], [0, N3^k]] where (N1 - N3) A_k = N1^k - N3^k.
///
/// A_k is formed as sum_{j<k} N1^j N3^{k-1-j}, which is the divided difference
/// off the diagonal and k N1^{k-1} on it, without dividing.
template <class Scalar>
BlockOperator<Scalar> block_power(const BlockOperator<Scalar>& x, unsigned k) {
  if (k == 0) throw std::invalid_argument("block_power: k = 0 would produce the identity, which lies outside the algebra");
  if (!x.is_upper_triangular()) throw std::invalid_argument("block_power: lower-left block must vanish");
  const std::size_t m = x.dimension();
  std::vector<Scalar> p1(m), a(m), p3(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Scalar& n1 = x.b11[i];
    const Scalar& n3 = x.b22[i];
    // Horner-like accumulation: a_k = n1 * a_{k-1} + n3^{k-1}.
    Scalar acc(0), n3_pow(1);
    for (unsigned j = 0; j < k; ++j) {
      acc = acc * n1 + n3_pow;
      if (j + 1 < k) n3_pow *= n3;
    }
    a[i] = std::move(acc);
    p1[i] = detail::power(n1, k);
    p3[i] = n3_pow * n3;
  }
  DiagonalOperator<Scalar> ak(std::move(a));
  return BlockOperator<Scalar>(DiagonalOperator<Scalar>(std::move(p1)), ak * x.b12, DiagonalOperator<Scalar>::zero(m),
                               DiagonalOperator<Scalar>(std::move(p3)));
}

/// [X^1, X^2, ..., X^kmax], each from block_power.
template <class Scalar>
std::vector<BlockOperator<Scalar>> block_powers(const BlockOperator<Scalar>& x, unsigned kmax) {
  std::vector<BlockOperator<Scalar>> out;
  out.reserve(kmax);
  for (unsigned k = 1; k <= kmax; ++k) out.push_back(block_power(x, k));
  return out;
}

/// sum_j c_j X^j from a table of powers (powers[j-1] = X^j); p(0) must vanish.
template <class Scalar>
BlockOperator<Scalar> polynomial_of(const std::vector<BlockOperator<Scalar>>& powers, const RationalPolynomial& p) {
  if (p.constant_term() != 0)
    throw std::invalid_argument("polynomial_of: p(0) must vanish in the non-unital algebra");
  if (p.degree() > static_cast<int>(powers.size())) throw std::invalid_argument("polynomial_of: power table too short");
  if (powers.empty()) throw std::invalid_argument("polynomial_of: empty power table");
  BlockOperator<Scalar> out = BlockOperator<Scalar>::zero(powers.front().dimension());
  const auto& c = p.coefficients();
  for (std::size_t j = 1; j < c.size(); ++j)
    if (c[j] != 0) out += powers[j - 1] * ScalarTraits<Scalar>::from_rational(c[j]);
  return out;
}

/// p(X) = sum_j c_j X^j for p with p(0) = 0, assembled from block powers.
template <class Scalar>
BlockOperator<Scalar> polynomial_of(const BlockOperator<Scalar>& x, const RationalPolynomial& p) {
  if (p.degree() <= 0) {
    if (p.constant_term() != 0)
      throw std::invalid_argument("polynomial_of: p(0) must vanish in the non-unital algebra");
    return BlockOperator<Scalar>::zero(x.dimension());
  }
  return polynomial_of(block_powers(x, static_cast<unsigned>(p.degree())), p);
}

/// f(N) = diag(f(d_1), ..., f(d_M)).
template <class Scalar, class Function>
DiagonalOperator<Scalar> functional_calculus(const DiagonalOperator<Scalar>& n, const Function& f) {
  std::vector<Scalar> out;
  out.reserve(n.size());
  for (const auto& d : n.entries()) out.push_back(f(d));
  return DiagonalOperator<Scalar>(std::move(out));
}

template <class Scalar>
DiagonalOperator<Scalar> functional_calculus(const DiagonalOperator<Scalar>& n, const RationalPolynomial& p) {
  return functional_calculus(n, [&p](const Scalar& d) { return p(d); });
}

/// Largest singular value of a dense matrix; the generic oracle path.
inline double dense_spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

/// max_n sqrt(B12[n]^2 + B22[n]^2) for column-block operators (B11 = B21 = 0).
template <class Scalar>
double column_block_norm(const BlockOperator<Scalar>& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    const double u = ScalarTraits<Scalar>::to_double(x.b12[i]);
    const double v = ScalarTraits<Scalar>::to_double(x.b22[i]);
    m = std::max(m, std::hypot(u, v));
  }
  return m;
}

/// Operator 2-norm: closed form for column-block operators, dense SVD otherwise.
template <class Scalar>
double operator_norm(const BlockOperator<Scalar>& x) {
  if (x.is_column_block()) return column_block_norm(x);
  return dense_spectral_norm(x.to_dense());
}

}  // namespace amenalab
