#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amenalab/rational.hpp"

namespace amenalab {

/// Dense row-major matrix over the rationals; exact elimination.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RationalMatrix diagonal(const std::vector<Rational>& d) {
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// Upper-shift Jordan block of size n (J e_{k+1} = e_k), nilpotent of index n.
  static RationalMatrix jordan_nilpotent(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  /// Entries in row-major order.
  const std::vector<Rational>& data() const { return a_; }

  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    RationalMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Rational& xik = x(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }
  friend RationalMatrix operator+(RationalMatrix x, const RationalMatrix& y) {
    x.check_same(y);
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend RationalMatrix operator-(RationalMatrix x, const RationalMatrix& y) {
    x.check_same(y);
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix x) {
    for (auto& e : x.a_) e *= s;
    return x;
  }
  friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (a_[i * cols_ + j] != 0) out[i] += a_[i * cols_ + j] * v[j];
    return out;
  }

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      const Rational inv = 1 / (*this)(r, c);
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c) == 0) continue;
        const Rational f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    RationalMatrix m(*this);
    return m.rref().size();
  }

  /// Basis of {x : A x = 0}, one vector per free column.
  std::vector<std::vector<Rational>> nullspace() const {
    RationalMatrix m(*this);
    const auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rational> v(cols_, Rational(0));
      v[free] = 1;
      for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Stacks vectors as columns.
  static RationalMatrix from_columns(const std::vector<std::vector<Rational>>& columns, std::size_t rows) {
    RationalMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

 private:
  void check_same(const RationalMatrix& y) const {
    if (rows_ != y.rows_ || cols_ != y.cols_) throw std::invalid_argument("matrix dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

/// Coordinates of `target` in the span of linearly independent `basis` vectors,
/// or nothing when target lies outside the span.
inline bool solve_in_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& target,
                          std::vector<Rational>* coords = nullptr) {
  const std::size_t n = target.size();
  RationalMatrix aug(n, basis.size() + 1);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = basis[j][i];
  for (std::size_t i = 0; i < n; ++i) aug(i, basis.size()) = target[i];
  const auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == basis.size()) return false;
  if (coords != nullptr) {
    coords->assign(basis.size(), Rational(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) (*coords)[pivots[k]] = aug(k, basis.size());
  }
  return true;
}

}  // namespace amenalab
