#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amenalab/operators.hpp"
#include "amenalab/rational.hpp"
#include "amenalab/spectrum.hpp"

namespace amenalab {

/// Element [[0, g(N)], [0, N^{1/2} g(N)]] of the closed algebra generated by T,
/// stored with its symbol values g(lambda_n).
template <class Scalar>
class AlgebraElement {
 public:
  static AlgebraElement from_symbol(const SpectrumSequence& spectrum, std::vector<Scalar> symbol) {
    if (symbol.size() != spectrum.size()) throw std::invalid_argument("symbol length must match the truncation");
    const std::size_t m = spectrum.size();
    DiagonalOperator<Scalar> g(std::move(symbol));
    DiagonalOperator<Scalar> lower = diagonal_sqrt_N<Scalar>(spectrum) * g;
    return AlgebraElement(BlockOperator<Scalar>(DiagonalOperator<Scalar>::zero(m), std::move(g),
                                                DiagonalOperator<Scalar>::zero(m), std::move(lower)));
  }

  const std::vector<Scalar>& symbol() const { return block_.b12.entries(); }
  const BlockOperator<Scalar>& block() const { return block_; }

  /// The product stays in the algebra with symbol sqrt(z) g_a g_b.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.block_ * b.block_);
  }
  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.block_ + b.block_);
  }
  friend AlgebraElement operator*(const Scalar& s, const AlgebraElement& a) { return AlgebraElement(a.block_ * s); }

 private:
  explicit AlgebraElement(BlockOperator<Scalar> block) : block_(std::move(block)) {}

  BlockOperator<Scalar> block_;
};

/// ||B11|| + ||B21|| + max_n |B22[n] - sqrt(lambda_n) B12[n]|; zero exactly on the algebra.
template <class Scalar>
double membership_residual(const BlockOperator<Scalar>& x, const SpectrumSequence& spectrum) {
  if (x.dimension() != spectrum.size()) throw std::invalid_argument("operator and spectrum dimensions differ");
  const DiagonalOperator<Scalar> defect = x.b22 - diagonal_sqrt_N<Scalar>(spectrum) * x.b12;
  return x.b11.norm() + x.b21.norm() + defect.norm();
}

/// Exact membership test (meaningful for the exact scalar kinds).
template <class Scalar>
bool is_algebra_member(const BlockOperator<Scalar>& x, const SpectrumSequence& spectrum) {
  if (x.dimension() != spectrum.size()) return false;
  return x.b11.is_zero() && x.b21.is_zero() && (x.b22 - diagonal_sqrt_N<Scalar>(spectrum) * x.b12).is_zero();
}

/// E_n with symbol h_n = lambda_n^{-1/2} at lambda_n and 0 elsewhere; E_n^2 = E_n.
template <class Scalar>
AlgebraElement<Scalar> idempotent_E(std::size_t n, const SpectrumSequence& spectrum) {
  if (n < 1 || n > spectrum.size())
    throw std::out_of_range("idempotent index " + std::to_string(n) + " outside 1.." + std::to_string(spectrum.size()));
  std::vector<Scalar> h(spectrum.size(), Scalar(0));
  const Rational& l = spectrum.lambda(n);
  h[n - 1] = ScalarTraits<Scalar>::sqrt_of(l) / ScalarTraits<Scalar>::from_rational(l);
  return AlgebraElement<Scalar>::from_symbol(spectrum, std::move(h));
}

/// sum_{n <= m} lambda_n E_n.
template <class Scalar>
BlockOperator<Scalar> idempotent_partial_sum(std::size_t m, const SpectrumSequence& spectrum) {
  if (m > spectrum.size()) throw std::out_of_range("partial-sum cutoff exceeds the truncation");
  BlockOperator<Scalar> sum = BlockOperator<Scalar>::zero(spectrum.size());
  for (std::size_t n = 1; n <= m; ++n)
    sum += idempotent_E<Scalar>(n, spectrum).block() * ScalarTraits<Scalar>::from_rational(spectrum.lambda(n));
  return sum;
}

/// ||T - sum_{n <= m} lambda_n E_n||, computed exactly and normed in closed form.
inline double generation_defect(std::size_t m, const SpectrumSequence& spectrum) {
  if (m < 1 || m > spectrum.size()) throw std::out_of_range("partial-sum cutoff outside 1..M");
  const ExactBlock defect = build_T<Surd>(spectrum) - idempotent_partial_sum<Surd>(m, spectrum);
  return operator_norm(defect);
}

/// sqrt(lambda_{m+1} + lambda_{m+1}^2), or 0 once the truncation is exhausted.
inline double generation_defect_closed_form(std::size_t m, const SpectrumSequence& spectrum) {
  if (m >= spectrum.size()) return 0.0;
  const double l = spectrum.lambda_d(m + 1);
  return std::sqrt(l + l * l);
}

/// phi_n(a) = B22[n], the lambda_n-eigenvalue of the lower-right block.
template <class Scalar>
Scalar character_value(const AlgebraElement<Scalar>& a, std::size_t n) {
  const auto& lower = a.block().b22;
  if (n < 1 || n > lower.size()) throw std::out_of_range("character index outside 1..M");
  return lower[n - 1];
}

}  // namespace amenalab
