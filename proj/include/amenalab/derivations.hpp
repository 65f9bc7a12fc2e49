#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amenalab/linear_algebra.hpp"
#include "amenalab/rational.hpp"

namespace amenalab {

/// Exponent vector of a monomial g_1^{a_1} ... g_r^{a_r} in commuting generators.
using Exponent = std::vector<unsigned>;

/// Finite-dimensional commutative bimodule V with a . x = x . a, given by the
/// action matrices rho(g_i) of the generators on V.
struct Bimodule {
  std::size_t dim = 0;
  std::vector<RationalMatrix> actions;
};

/// Derivations D from the algebra generated by commuting matrices into a
/// commutative bimodule. A derivation is determined by its values x_i = D(g_i);
/// `basis()[k][i]` is the value of the k-th basis derivation on generator i.
class DerivationSpace {
 public:
  const std::vector<RationalMatrix>& generators() const { return generators_; }
  const Bimodule& module() const { return module_; }
  /// Monomials spanning the algebra (linearly independent), with their matrices.
  const std::vector<Exponent>& algebra_basis_exponents() const { return basis_exponents_; }
  const std::vector<RationalMatrix>& algebra_basis() const { return basis_matrices_; }
  std::size_t algebra_dimension() const { return basis_matrices_.size(); }

  std::size_t dimension() const { return derivations_.size(); }
  const std::vector<std::vector<std::vector<Rational>>>& basis() const { return derivations_; }

  /// D_k(g^alpha) by the Leibniz rule.
  std::vector<Rational> apply(std::size_t k, const Exponent& alpha) const {
    return apply_values(derivations_.at(k), alpha);
  }

  /// Checks D(ab) = a.D(b) + D(a).b exactly on all pairs of algebra basis monomials.
  bool satisfies_leibniz(std::size_t k) const { return leibniz_holds(derivations_.at(k)); }

  /// Same check for arbitrary generator values.
  bool leibniz_holds(const std::vector<std::vector<Rational>>& values) const {
    const std::size_t b = basis_exponents_.size();
    std::vector<std::vector<Rational>> d(b);
    for (std::size_t j = 0; j < b; ++j) d[j] = apply_values(values, basis_exponents_[j]);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = i; j < b; ++j) {
        std::vector<Rational> coords;
        if (!solve_in_span(basis_vectors(), flatten(basis_matrices_[i] * basis_matrices_[j]), &coords))
          throw std::logic_error("algebra basis does not close under multiplication");
        std::vector<Rational> lhs(module_.dim, Rational(0));
        for (std::size_t l = 0; l < b; ++l)
          if (coords[l] != 0)
            for (std::size_t t = 0; t < module_.dim; ++t) lhs[t] += coords[l] * d[l][t];
        const auto a_db = action(basis_exponents_[i]).apply(d[j]);
        const auto da_b = action(basis_exponents_[j]).apply(d[i]);
        for (std::size_t t = 0; t < module_.dim; ++t)
          if (lhs[t] != a_db[t] + da_b[t]) return false;
      }
    return true;
  }

  /// rho(g^alpha); the empty exponent gives the identity of V.
  RationalMatrix action(const Exponent& alpha) const {
    RationalMatrix out = RationalMatrix::identity(module_.dim);
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (unsigned e = 0; e < alpha[i]; ++e) out = module_.actions[i] * out;
    return out;
  }

  static std::vector<Rational> flatten(const RationalMatrix& m) { return m.data(); }

 private:
  friend DerivationSpace derivation_space(const std::vector<RationalMatrix>& generators, const Bimodule* module);

  std::vector<std::vector<Rational>> basis_vectors() const {
    std::vector<std::vector<Rational>> v;
    v.reserve(basis_matrices_.size());
    for (const auto& m : basis_matrices_) v.push_back(flatten(m));
    return v;
  }

  std::vector<Rational> apply_values(const std::vector<std::vector<Rational>>& values, const Exponent& alpha) const {
    std::vector<Rational> out(module_.dim, Rational(0));
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      Exponent rest = alpha;
      --rest[i];
      const auto term = action(rest).apply(values[i]);
      for (std::size_t t = 0; t < module_.dim; ++t) out[t] += Rational(alpha[i]) * term[t];
    }
    return out;
  }

  std::vector<RationalMatrix> generators_;
  Bimodule module_;
  std::vector<Exponent> basis_exponents_;
  std::vector<RationalMatrix> basis_matrices_;
  std::vector<std::vector<std::vector<Rational>>> derivations_;
};

namespace detail {

inline Exponent unit_exponent(std::size_t r, std::size_t i) {
  Exponent e(r, 0);
  e[i] = 1;
  return e;
}

inline bool commute(const RationalMatrix& a, const RationalMatrix& b) { return a * b == b * a; }

}  // namespace detail

/// Solves the Leibniz constraints for derivations into `module` (the algebra
/// itself under multiplication when null) and returns an exact nullspace basis.
///
/// Constraints come from a generating set of the relation ideal: every
/// generator and every product g_i * b of a generator with a basis monomial
/// rewritten in the monomial basis.
inline DerivationSpace derivation_space(const std::vector<RationalMatrix>& generators, const Bimodule* module) {
  DerivationSpace space;
  space.generators_ = generators;
  const std::size_t r = generators.size();
  const std::size_t n = r == 0 ? 0 : generators.front().rows();
  for (const auto& g : generators)
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("generators must be square of one size");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (!detail::commute(generators[i], generators[j]))
        throw std::invalid_argument("generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                    " do not commute");

  // Monomial basis of the algebra by breadth-first closure under multiplication by generators.
  std::vector<std::vector<Rational>> basis_vecs;
  std::vector<Exponent> queue;
  for (std::size_t i = 0; i < r; ++i) queue.push_back(detail::unit_exponent(r, i));
  std::map<Exponent, bool> seen;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Exponent alpha = queue[head];
    if (seen[alpha]) continue;
    seen[alpha] = true;
    RationalMatrix m = RationalMatrix::identity(n);
    for (std::size_t i = 0; i < r; ++i)
      for (unsigned e = 0; e < alpha[i]; ++e) m = generators[i] * m;
    const auto v = DerivationSpace::flatten(m);
    bool zero = m.is_zero();
    if (zero || solve_in_span(basis_vecs, v, nullptr)) continue;
    basis_vecs.push_back(v);
    space.basis_exponents_.push_back(alpha);
    space.basis_matrices_.push_back(m);
    for (std::size_t i = 0; i < r; ++i) {
      Exponent next = alpha;
      ++next[i];
      queue.push_back(next);
    }
  }
  const std::size_t b = space.basis_matrices_.size();

  // Relations: (lhs exponent, coordinates of its matrix in the basis).
  std::vector<std::pair<Exponent, std::vector<Rational>>> relations;
  auto add_relation = [&](const Exponent& alpha, const RationalMatrix& m) {
    std::vector<Rational> coords;
    if (!solve_in_span(basis_vecs, DerivationSpace::flatten(m), &coords))
      throw std::logic_error("monomial outside the computed algebra span");
    relations.emplace_back(alpha, std::move(coords));
  };
  for (std::size_t i = 0; i < r; ++i) add_relation(detail::unit_exponent(r, i), generators[i]);
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t i = 0; i < r; ++i) {
      Exponent alpha = space.basis_exponents_[j];
      ++alpha[i];
      add_relation(alpha, generators[i] * space.basis_matrices_[j]);
    }

  if (module != nullptr) {
    space.module_ = *module;
    if (space.module_.actions.size() != r) throw std::invalid_argument("bimodule needs one action per generator");
    for (const auto& a : space.module_.actions)
      if (a.rows() != space.module_.dim || a.cols() != space.module_.dim)
        throw std::invalid_argument("bimodule action has the wrong size");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        if (!detail::commute(space.module_.actions[i], space.module_.actions[j]))
          throw std::invalid_argument("bimodule actions do not commute");
  } else {
    space.module_.dim = b;
    for (std::size_t i = 0; i < r; ++i) {
      RationalMatrix rho(b, b);
      for (std::size_t j = 0; j < b; ++j) {
        std::vector<Rational> coords;
        solve_in_span(basis_vecs, DerivationSpace::flatten(generators[i] * space.basis_matrices_[j]), &coords);
        for (std::size_t l = 0; l < b; ++l) rho(l, j) = coords[l];
      }
      space.module_.actions.push_back(std::move(rho));
    }
  }
  const std::size_t dim_v = space.module_.dim;

  if (module != nullptr) {
    // The action must factor through the algebra: rho kills every relation.
    for (const auto& [alpha, coords] : relations) {
      RationalMatrix lhs = space.action(alpha);
      for (std::size_t l = 0; l < b; ++l)
        if (coords[l] != 0) lhs = lhs - coords[l] * space.action(space.basis_exponents_[l]);
      if (!lhs.is_zero()) throw std::invalid_argument("bimodule action does not respect the algebra relations");
    }
  }

  // Unknowns: x_1, ..., x_r stacked, each in V.
  const std::size_t unknowns = r * dim_v;
  auto leibniz_rows = [&](const Exponent& alpha) {
    RationalMatrix rows(dim_v, unknowns);
    for (std::size_t i = 0; i < r; ++i) {
      if (alpha[i] == 0) continue;
      Exponent rest = alpha;
      --rest[i];
      const RationalMatrix act = space.action(rest);
      for (std::size_t s = 0; s < dim_v; ++s)
        for (std::size_t t = 0; t < dim_v; ++t) rows(s, i * dim_v + t) += Rational(alpha[i]) * act(s, t);
    }
    return rows;
  };
  std::vector<RationalMatrix> basis_rows;
  basis_rows.reserve(b);
  for (const auto& beta : space.basis_exponents_) basis_rows.push_back(leibniz_rows(beta));

  RationalMatrix constraints(relations.size() * dim_v, unknowns);
  for (std::size_t k = 0; k < relations.size(); ++k) {
    RationalMatrix rows = leibniz_rows(relations[k].first);
    for (std::size_t l = 0; l < b; ++l)
      if (relations[k].second[l] != 0) rows = rows - relations[k].second[l] * basis_rows[l];
    for (std::size_t s = 0; s < dim_v; ++s)
      for (std::size_t c = 0; c < unknowns; ++c) constraints(k * dim_v + s, c) = rows(s, c);
  }

  for (const auto& v : constraints.nullspace()) {
    std::vector<std::vector<Rational>> values(r, std::vector<Rational>(dim_v));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t t = 0; t < dim_v; ++t) values[i][t] = v[i * dim_v + t];
    space.derivations_.push_back(std::move(values));
  }
  return space;
}

inline DerivationSpace derivation_space(const std::vector<RationalMatrix>& generators) {
  return derivation_space(generators, nullptr);
}

inline DerivationSpace derivation_space(const std::vector<RationalMatrix>& generators, const Bimodule& module) {
  return derivation_space(generators, &module);
}

}  // namespace amenalab
