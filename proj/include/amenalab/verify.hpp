#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "amenalab/algebra.hpp"
#include "amenalab/approximate_identity.hpp"
#include "amenalab/config.hpp"
#include "amenalab/derivations.hpp"
#include "amenalab/linear_algebra.hpp"
#include "amenalab/operators.hpp"
#include "amenalab/report.hpp"
#include "amenalab/similarity.hpp"

namespace amenalab {

/// One checked claim: a report plus the test that covers the same check.
struct ClaimResult {
  std::string claim;
  std::string test_name;
  ConvergenceReport report;
};

enum class VerifyTarget { weak, character, similarity, derivations, all };

inline VerifyTarget parse_target(const std::string& s) {
  if (s == "weak") return VerifyTarget::weak;
  if (s == "character") return VerifyTarget::character;
  if (s == "similarity") return VerifyTarget::similarity;
  if (s == "derivations") return VerifyTarget::derivations;
  if (s == "all") return VerifyTarget::all;
  throw ValidationError("target", "expected weak, character, similarity, derivations or all");
}

/// Random p with p(0) = 0, degree in [1, max_degree], small rational coefficients.
inline RationalPolynomial random_symbol_polynomial(std::mt19937_64& rng, unsigned max_degree) {
  std::uniform_int_distribution<unsigned> deg(1, max_degree);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  const unsigned d = deg(rng);
  std::vector<Rational> c(d + 1, Rational(0));
  for (unsigned j = 1; j <= d; ++j) c[j] = make_rational(num(rng), den(rng));
  if (c[d] == 0) c[d] = 1;
  return RationalPolynomial::symbol(std::move(c));
}

inline constexpr std::uint64_t kVerifySeed = 0x5eed2026ULL;

inline std::vector<ClaimResult> verify_weak(const RunConfig& config) {
  const SpectrumSequence spectrum = config.make();
  const std::size_t m = spectrum.size();
  std::vector<ClaimResult> out;

  ConvergenceReport idem("weak_idempotency", "index", {"exact_defect", "float_defect"}, 2, config.tol_algebraic);
  bool exact_ok = true, float_ok = true;
  for (std::size_t n = 1; n <= m; ++n) {
    const auto e = idempotent_E<Surd>(n, spectrum).block();
    // Floating copy: the correctly rounded exact element (B22 is exactly 1).
    const FloatBlock ef = e.cast<double>();
    const ExactBlock d = e * e - e;
    const double exact = d.b11.is_zero() && d.b12.is_zero() && d.b21.is_zero() && d.b22.is_zero() ? 0.0 : operator_norm(d);
    const double fl = operator_norm(ef * ef - ef);
    exact_ok = exact_ok && exact == 0.0;
    float_ok = float_ok && fl <= config.tol_algebraic;
    idem.add_row(static_cast<long>(n), {exact, fl});
  }
  idem.set_verdict("exact_idempotent", exact_ok);
  idem.set_verdict("threshold_met", float_ok);
  out.push_back({"idempotents E_n satisfy E_n^2 = E_n", "Acceptance.Idempotency", idem});

  ConvergenceReport member("weak_membership", "index", {"residual", "degree"}, 2, 0.0);
  std::mt19937_64 rng(kVerifySeed);
  const auto powers = block_powers(build_T<Surd>(spectrum), 16);
  bool member_ok = true;
  for (long i = 1; i <= 100; ++i) {
    const RationalPolynomial p = random_symbol_polynomial(rng, 16);
    const ExactBlock x = polynomial_of(powers, p);
    const bool exact = is_algebra_member(x, spectrum);
    member_ok = member_ok && exact;
    member.add_row(i, {membership_residual(x, spectrum), static_cast<double>(p.degree())});
  }
  member.set_verdict("exact_membership", member_ok);
  out.push_back({"p(T) lies in the algebra characterized by its symbol", "Acceptance.AlgebraCharacterization", member});

  ConvergenceReport gen("weak_generation", "m", {"defect", "closed_form"}, 2, config.tol_algebraic);
  bool match = true, decreasing = true;
  double prev = INFINITY;
  for (std::size_t k = 1; k <= m; ++k) {
    const double d = generation_defect(k, spectrum);
    const double c = generation_defect_closed_form(k, spectrum);
    match = match && std::abs(d - c) <= config.tol_algebraic;
    if (k < m) decreasing = decreasing && d < prev;
    prev = d;
    gen.add_row(static_cast<long>(k), {d, c});
  }
  gen.set_verdict("closed_form_match", match);
  gen.set_verdict("strictly_decreasing", decreasing);
  gen.set_verdict("reconstruction_exact", build_T<Surd>(spectrum) == idempotent_partial_sum<Surd>(m, spectrum));
  out.push_back({"idempotents generate the algebra (T = sum lambda_n E_n)", "Acceptance.Generation", gen});
  return out;
}

/// 200 seeded polynomials of degree <= 32 against each lambda_n, n <= 8.
inline ConvergenceReport division_identity_report(const SpectrumSequence& spectrum) {
  ConvergenceReport rep("character_division", "index", {"lambda", "failures"}, 2, 0.0);
  std::mt19937_64 rng(kVerifySeed + 1);
  std::vector<RationalPolynomial> polys;
  std::uniform_int_distribution<unsigned> deg(0, 32);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 13);
  for (int i = 0; i < 200; ++i) {
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& x : c) x = make_rational(num(rng), den(rng));
    polys.emplace_back(std::move(c));
  }
  const RationalPolynomial z = RationalPolynomial::monomial(1);
  bool exact = true;
  for (std::size_t n = 1; n <= std::min<std::size_t>(8, spectrum.size()); ++n) {
    const Rational& l = spectrum.lambda(n);
    long failures = 0;
    for (const auto& p : polys) {
      const RationalPolynomial lhs = RationalPolynomial{Rational(l * p(l))} - (z * p).compose_affine(l, Rational(-1));
      if (lhs.constant_term() != 0 || !(z * divide_shifted(p, l) == lhs)) ++failures;
    }
    exact = exact && failures == 0;
    rep.add_row(static_cast<long>(n), {l.get_d(), static_cast<double>(failures)});
  }
  rep.set_verdict("exact_division", exact);
  return rep;
}

inline std::vector<ClaimResult> verify_character(const RunConfig& config) {
  const SpectrumSequence spectrum = config.make();
  std::vector<ClaimResult> out;
  ApproximateIdentityOptions options;
  options.tolerance = config.tol_analytic;
  for (std::size_t n : config.characters) {
    auto run = approximate_identity_sequence(n, spectrum, config.degrees, options);
    out.push_back({"bounded approximate identity for lambda_" + std::to_string(n) + " I - T",
                   "Acceptance.BoundedApproximateIdentity", std::move(run.report)});
  }
  out.push_back({"lambda p(lambda) - (lambda - z) p(lambda - z) is divisible by z", "Acceptance.DivisionIdentity",
                 division_identity_report(spectrum)});

  // M = 2, n = 1: 6z - 8z^2 takes the value 1 at both nonzero shifted eigenvalues (1/4 and 1/2).
  ConvergenceReport spot("character_spot_check", "M", {"residual"}, 1, 1e-14);
  const SpectrumSequence two = geometric_spectrum(make_rational(1, 2), 2);
  const RationalPolynomial six = RationalPolynomial::symbol({Rational(0), Rational(6), Rational(-8)});
  const double r = approximate_identity_residual(1, two, six).residual;
  spot.add_row(2, {r});
  spot.set_verdict("threshold_met", r <= 1e-14);
  out.push_back({"exact spot check with p = 6z - 8z^2", "Acceptance.ExactnessSpotCheck", std::move(spot)});

  ConvergenceReport unit = unit_approximation_T(spectrum, config.degrees, options);
  out.push_back({"polynomial unit approximation for T (residual decrease; norms annotated)",
                 "ApproximateIdentity.UnitApproximationResidualsDecrease", std::move(unit)});

  ConvergenceReport nil("character_nilpotent_defect", "C", {"jordan2_defect", "jordan3_defect"}, 2, 1e-9);
  bool j2 = true, floor = true;
  for (long c : {10L, 100L, 1000L}) {
    Eigen::MatrixXd j2m = Eigen::MatrixXd::Zero(2, 2);
    j2m(0, 1) = 1.0;
    const double d2 = bai_defect(j2m, static_cast<double>(c));
    Eigen::MatrixXd j3 = Eigen::MatrixXd::Zero(3, 3);
    j3(0, 1) = j3(1, 2) = 1.0;
    const double d3 = bai_defect(j3, static_cast<double>(c));
    j2 = j2 && std::abs(d2 - 1.0) <= 1e-9;
    floor = floor && d3 >= 1.0 - 1e-9;
    nil.add_row(c, {d2, d3});
  }
  nil.set_verdict("threshold_met", j2);
  nil.set_verdict("defect_floor", floor);
  out.push_back({"nilpotent generators have no bounded approximate identity", "Acceptance.ApproximateIdentityDefect", nil});
  return out;
}

inline std::vector<ClaimResult> verify_similarity(const RunConfig& config) {
  std::vector<ClaimResult> out;
  out.push_back({"minimal intertwiner norm grows without bound", "Acceptance.NonSimilarityShadow",
                 similarity_growth_sweep(config.spectrum, config.truncations, config.similarity_threshold)});

  ConvergenceReport conj("similarity_conjugation", "M", {"upper_right_norm"}, 1, 0.0);
  bool zeroed = true;
  for (std::size_t m : config.truncations) {
    const SpectrumSequence s = make_spectrum(config.spectrum, m);
    std::vector<Surd> b;
    for (const auto& l : s.values()) b.push_back(-(Surd::sqrt_of(l) / Surd(l)));
    const ExactBlock c = conjugate_by_upper_unipotent(build_T<Surd>(s), ExactDiagonal(b));
    zeroed = zeroed && c.b12.is_zero() && c.b21.is_zero() && c.b11.is_zero() && c.b22 == diagonal_N<Surd>(s);
    conj.add_row(static_cast<long>(m), {c.b12.norm()});
  }
  conj.set_verdict("upper_right_zeroed", zeroed);
  out.push_back({"conjugation by [[I,B],[0,I]] with B = -N^{-1/2} kills the corner", "Acceptance.NonSimilarityShadow", conj});
  return out;
}

/// Derivation dimensions for idempotent (diagonal 0/1) and nilpotent Jordan generators.
inline std::vector<ClaimResult> verify_derivations(const RunConfig&) {
  ConvergenceReport rep("derivations", "case", {"kind", "size", "dimension", "leibniz_ok"}, 4, 0.0);
  bool dichotomy = true, leibniz = true;
  long case_id = 0;
  auto record = [&](const std::vector<RationalMatrix>& gens, bool nilpotent, std::size_t size) {
    const DerivationSpace space = derivation_space(gens);
    bool ok = true;
    for (std::size_t k = 0; k < space.dimension(); ++k) ok = ok && space.satisfies_leibniz(k);
    leibniz = leibniz && ok;
    dichotomy = dichotomy && (nilpotent ? space.dimension() >= 1 : space.dimension() == 0);
    rep.add_row(++case_id, {nilpotent ? 1.0 : 0.0, static_cast<double>(size), static_cast<double>(space.dimension()),
                            ok ? 1.0 : 0.0});
  };
  for (std::size_t n = 1; n <= 4; ++n)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Rational> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = (mask >> i) & 1u;
      record({RationalMatrix::diagonal(d)}, false, n);
    }
  for (std::size_t n = 2; n <= 4; ++n) record({RationalMatrix::jordan_nilpotent(n)}, true, n);
  rep.set_verdict("dichotomy", dichotomy);
  rep.set_verdict("leibniz_exact", leibniz);
  return {{"derivations vanish on idempotent-generated algebras, not on nilpotent ones", "Acceptance.DerivationDichotomy",
           rep}};
}

inline std::vector<ClaimResult> run_verify(VerifyTarget target, const RunConfig& config) {
  std::vector<ClaimResult> out;
  auto append = [&out](std::vector<ClaimResult> part) {
    for (auto& c : part) out.push_back(std::move(c));
  };
  if (target == VerifyTarget::weak || target == VerifyTarget::all) append(verify_weak(config));
  if (target == VerifyTarget::character || target == VerifyTarget::all) append(verify_character(config));
  if (target == VerifyTarget::similarity || target == VerifyTarget::all) append(verify_similarity(config));
  if (target == VerifyTarget::derivations || target == VerifyTarget::all) append(verify_derivations(config));
  return out;
}

}  // namespace amenalab
