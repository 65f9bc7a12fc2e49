// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "amenalab/amenalab.hpp"
#include "oracles.hpp"

using namespace amenalab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Rational half() { return make_rational(1, 2); }

Outcome idempotency() {
  const auto s = geometric_spectrum(half(), 64);
  bool exact = true;
  double worst_float = 0.0;
  for (std::size_t n = 1; n <= 64; ++n) {
    const ExactBlock e = idempotent_E<Surd>(n, s).block();
    exact = exact && (e * e == e);
    const FloatBlock f = e.cast<double>();
    worst_float = std::max(worst_float, operator_norm(f * f - f));
  }
  return {exact && worst_float <= 1e-12,
          std::string("exact E^2 = E for all n <= 64: ") + (exact ? "yes" : "no") +
              ", max floating defect " + format_number(worst_float) + " (tol 1e-12)"};
}

Outcome algebra_characterization() {
  const auto s = geometric_spectrum(half(), 64);
  const auto powers = block_powers(build_T<Surd>(s), 16);
  oracle::Gen gen(2024);
  int members = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto x = polynomial_of(powers, gen.polynomial(16, true));
    members += is_algebra_member(x, s) ? 1 : 0;
    worst = std::max(worst, membership_residual(x, s));
  }
  return {members == 100 && worst == 0.0,
          std::to_string(members) + "/100 exact members, max residual " + format_number(worst)};
}

Outcome generation() {
  const auto s = geometric_spectrum(half(), 64);
  double worst = 0.0, prev = INFINITY;
  bool decreasing = true;
  for (std::size_t m = 1; m < 64; ++m) {
    const double d = generation_defect(m, s);
    const double l = s.lambda_d(m + 1);
    worst = std::max(worst, std::abs(d - std::sqrt(l + l * l)));
    decreasing = decreasing && d < prev;
    prev = d;
  }
  const bool reconstructs = idempotent_partial_sum<Surd>(64, s) == build_T<Surd>(s);
  return {worst <= 1e-12 && decreasing && reconstructs,
          "max |defect - closed form| " + format_number(worst) + ", strictly decreasing: " +
              (decreasing ? "yes" : "no") + ", exact reconstruction at m = M: " + (reconstructs ? "yes" : "no")};
}

Outcome division_identity() {
  const auto s = geometric_spectrum(half(), 8);
  const auto z = RationalPolynomial::monomial(1);
  oracle::Gen gen(4);
  int checked = 0, failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = gen.polynomial(32, false, 50, 13);
    for (std::size_t n = 1; n <= 8; ++n) {
      const Rational& l = s.lambda(n);
      const auto numerator = RationalPolynomial{Rational(l * p(l))} - (z * p).compose_affine(l, Rational(-1));
      ++checked;
      try {
        const auto q = divide_shifted(p, l);
        if (numerator.constant_term() != 0 || !(z * q == numerator)) ++failures;
      } catch (const InternalConsistencyError&) {
        ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(checked - failures) + "/" + std::to_string(checked) +
                             " exact divisions with zero remainder and identical reconstruction"};
}

std::vector<ApproximateIdentityRun>& character_runs() {
  static std::vector<ApproximateIdentityRun> runs = [] {
    const auto s = geometric_spectrum(half(), 16);
    std::vector<ApproximateIdentityRun> out;
    for (std::size_t n : {1u, 2u, 3u}) out.push_back(approximate_identity_sequence(n, s, parse_degree_list("8:64")));
    return out;
  }();
  return runs;
}

Outcome bounded_approximate_identity() {
  bool ok = true;
  std::string detail;
  for (const auto& run : character_runs()) {
    const auto& r = run.report;
    const auto res = r.column_values("residual");
    const auto un = r.column_values("u_norm");
    const auto ub = r.column_values("u_bound");
    bool monotone = true;
    for (std::size_t i = 1; i < res.size(); ++i) monotone = monotone && res[i] <= res[i - 1] + 1e-12;
    const double max_u = *std::max_element(un.begin(), un.end());
    const double max_bound = *std::max_element(ub.begin(), ub.end());
    bool below = true;
    for (std::size_t i = 0; i < un.size(); ++i) below = below && un[i] <= ub[i];
    const bool uniform = max_bound <= 2.0 * run.limit_bound;
    const bool this_ok = res.back() < 1e-3 && monotone && below && uniform;
    ok = ok && this_ok;
    detail += r.name() + ": top residual " + format_number(res.back()) + ", max ||u|| " + format_number(max_u) +
              " <= certified " + format_number(max_bound) + " <= " + format_number(2.0 * run.limit_bound) + "; ";
  }
  const auto two = geometric_spectrum(half(), 2);
  const double spot =
      approximate_identity_residual(1, two, RationalPolynomial(std::vector<Rational>{0, 6, -8})).residual;
  ok = ok && spot <= 1e-14;
  detail += "spot check residual " + format_number(spot);
  return {ok, detail};
}

Outcome mean_value_bound() {
  int pairs = 0, holding = 0;
  double min_slack = INFINITY;
  for (const auto& run : character_runs())
    for (const auto& m : run.mvt) {
      ++pairs;
      holding += m.holds ? 1 : 0;
      min_slack = std::min(min_slack, m.slack);
    }
  return {pairs > 0 && holding == pairs,
          std::to_string(holding) + "/" + std::to_string(pairs) + " pairs hold, min slack " + format_number(min_slack)};
}

std::size_t oracle_dimension(const RationalMatrix& g) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(g.rows()), static_cast<Eigen::Index>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g(i, j).get_d();
  return oracle::derivation_dimension({d});
}

Outcome derivation_dichotomy() {
  int cases = 0, agree = 0;
  bool dichotomy = true;
  for (std::size_t n = 1; n <= 4; ++n)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Rational> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = (mask >> i) & 1u;
      const auto g = RationalMatrix::diagonal(d);
      const std::size_t dim = derivation_space({g}).dimension();
      ++cases;
      agree += dim == oracle_dimension(g) ? 1 : 0;
      dichotomy = dichotomy && dim == 0;
    }
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto j = RationalMatrix::jordan_nilpotent(n);
    const std::size_t dim = derivation_space({j}).dimension();
    ++cases;
    agree += dim == oracle_dimension(j) ? 1 : 0;
    dichotomy = dichotomy && dim >= 1;
  }
  return {dichotomy && agree == cases, std::to_string(cases) + " generators, dichotomy " +
                                           (dichotomy ? "holds" : "fails") + ", oracle agreement " +
                                           std::to_string(agree) + "/" + std::to_string(cases)};
}

Outcome approximate_identity_defect() {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
  j(0, 1) = 1.0;
  bool ok = true;
  std::string detail;
  for (double c : {10.0, 100.0, 1000.0}) {
    const double d = bai_defect(j, c);
    ok = ok && std::abs(d - 1.0) <= 1e-9;
    detail += "C=" + format_number(c) + ": " + format_number(d) + " ";
  }
  return {ok, detail};
}

Outcome non_similarity() {
  const std::vector<std::size_t> ms{4, 8, 16, 20};
  const std::vector<double> expected{4, 16, 256, 1024};
  const auto rep = similarity_growth_sweep({}, ms);
  const auto norms = rep.column_values("intertwiner_norm");
  bool close = true;
  for (std::size_t i = 0; i < ms.size(); ++i) close = close && std::abs(norms[i] - expected[i]) <= 1e-9;
  bool zeroed = true;
  for (std::size_t m : ms) {
    const auto s = geometric_spectrum(half(), m);
    std::vector<Surd> b;
    for (const auto& l : s.values()) b.push_back(-(Surd::sqrt_of(l) / Surd(l)));
    zeroed = zeroed && conjugate_by_upper_unipotent(build_T<Surd>(s), ExactDiagonal(b)).b12.is_zero();
  }
  std::string detail = "norms";
  for (double n : norms) detail += " " + format_number(n);
  detail += std::string(", strictly increasing: ") + (rep.verdict("strictly_increasing") ? "yes" : "no") +
            ", corner zeroed exactly: " + (zeroed ? "yes" : "no");
  return {close && rep.verdict("strictly_increasing") && zeroed, detail};
}

Outcome norm_oracle() {
  oracle::Gen gen(10);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto m = static_cast<std::size_t>(gen.integer(1, 32));
    const auto b = gen.reals(m, -4, 4), d = gen.reals(m, -4, 4);
    const std::vector<double> zero(m, 0.0);
    const FloatBlock x(FloatDiagonal::zero(m), FloatDiagonal(b), FloatDiagonal::zero(m), FloatDiagonal(d));
    worst = std::max(worst, std::abs(column_block_norm(x) - oracle::svd_norm(oracle::dense_blocks(zero, b, zero, d))));
  }
  return {worst <= 1e-10, "max |closed form - SVD| over 200 operators " + format_number(worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Idempotency", idempotency},
      {"AlgebraCharacterization", algebra_characterization},
      {"Generation", generation},
      {"DivisionIdentity", division_identity},
      {"BoundedApproximateIdentity", bounded_approximate_identity},
      {"MeanValueBound", mean_value_bound},
      {"DerivationDichotomy", derivation_dichotomy},
      {"ApproximateIdentityDefect", approximate_identity_defect},
      {"NonSimilarityShadow", non_similarity},
      {"NormOracleAgreement", norm_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
