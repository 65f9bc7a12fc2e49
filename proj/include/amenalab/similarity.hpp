#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "amenalab/operators.hpp"
#include "amenalab/report.hpp"
#include "amenalab/spectrum.hpp"

namespace amenalab {

/// [[I, B], [0, I]] X [[I, -B], [0, I]] for diagonal B.
///
/// For X = T this is [[0, N^{1/2} + B N], [0, N]]; the upper-right block
/// vanishes exactly when B = -N^{-1/2}.
template <class Scalar>
BlockOperator<Scalar> conjugate_by_upper_unipotent(const BlockOperator<Scalar>& x, const DiagonalOperator<Scalar>& b) {
  const std::size_t m = x.dimension();
  if (b.size() != m) throw std::invalid_argument("conjugating block dimension mismatch");
  const auto zero = DiagonalOperator<Scalar>::zero(m);
  const auto id = DiagonalOperator<Scalar>::identity(m);
  const BlockOperator<Scalar> left(id, b, zero, id);
  const BlockOperator<Scalar> right(id, -b, zero, id);
  return left * x * right;
}

/// Minimal-norm diagonal solution of B N = N^{1/2} on a truncation.
struct IntertwinerSolve {
  std::size_t truncation = 0;
  std::vector<double> b;  // diagonal of B
  double norm = 0.0;
  double residual = 0.0;
  /// Same quantities from a dense least-squares solve over all M x M matrices B.
  double oracle_norm = 0.0;
  double oracle_residual = 0.0;
};

/// Solves B N = N^{1/2} for a diagonal N with the given entries.
inline IntertwinerSolve minimal_intertwiner(const std::vector<double>& n_diag) {
  const std::size_t m = n_diag.size();
  IntertwinerSolve out;
  out.truncation = m;
  out.b.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(n_diag[i] > 0))
      throw std::domain_error("intertwiner unbounded at index " + std::to_string(i + 1));
    out.b[i] = 1.0 / std::sqrt(n_diag[i]);
    out.norm = std::max(out.norm, std::abs(out.b[i]));
    out.residual = std::max(out.residual, std::abs(out.b[i] * n_diag[i] - std::sqrt(n_diag[i])));
  }

  // Dense oracle: min-norm least squares of N^T B^T = (N^{1/2})^T as a generic M x M system.
  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(mi, mi), sqrt_n = Eigen::MatrixXd::Zero(mi, mi);
  for (Eigen::Index i = 0; i < mi; ++i) {
    n(i, i) = n_diag[static_cast<std::size_t>(i)];
    sqrt_n(i, i) = std::sqrt(n_diag[static_cast<std::size_t>(i)]);
  }
  const Eigen::MatrixXd dense_b = Eigen::MatrixXd(n.transpose()).completeOrthogonalDecomposition().solve(
      Eigen::MatrixXd(sqrt_n.transpose())).transpose();
  out.oracle_norm = dense_spectral_norm(dense_b);
  out.oracle_residual = dense_spectral_norm(dense_b * n - sqrt_n);
  return out;
}

inline IntertwinerSolve minimal_intertwiner(const SpectrumSequence& spectrum) {
  std::vector<double> d;
  d.reserve(spectrum.size());
  for (const auto& l : spectrum.values()) d.push_back(l.get_d());
  return minimal_intertwiner(d);
}

/// Minimal intertwiner norms over increasing truncations of one spectrum family.
///
/// Verdicts: norms strictly increasing, and (when a threshold is given) the
/// last norm exceeding it.
inline ConvergenceReport similarity_growth_sweep(const SpectrumDescriptor& family, const std::vector<std::size_t>& truncations,
                                                 std::optional<double> threshold = std::nullopt) {
  if (truncations.empty()) throw ValidationError("truncations", "list must not be empty");
  for (std::size_t i = 1; i < truncations.size(); ++i)
    if (truncations[i] <= truncations[i - 1])
      throw ValidationError("truncations", "not strictly increasing at position " + std::to_string(i + 1));
  ConvergenceReport report("similarity", "M", {"intertwiner_norm"}, 1, threshold.value_or(0.0));
  for (std::size_t m : truncations) {
    const IntertwinerSolve s = minimal_intertwiner(make_spectrum(family, m));
    report.add_row(static_cast<long>(m), {s.norm});
  }
  const auto norms = report.column_values("intertwiner_norm");
  bool increasing = true;
  for (std::size_t i = 1; i < norms.size(); ++i)
    if (!(norms[i] > norms[i - 1])) increasing = false;
  report.set_verdict("strictly_increasing", increasing);
  report.set_verdict("threshold_met", !threshold || norms.back() > *threshold);
  return report;
}

}  // namespace amenalab
