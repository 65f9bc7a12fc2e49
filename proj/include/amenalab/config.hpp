#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amenalab/approximate_identity.hpp"
#include "amenalab/rational.hpp"
#include "amenalab/spectrum.hpp"

namespace amenalab {

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ValidationError("format", "expected csv or json, got '" + s + "'");
}

inline std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

/// "a:b" is the doubling sequence a, 2a, 4a, ..., b; "a,b,c" is an explicit list.
inline std::vector<unsigned> parse_degree_list(const std::string& text) {
  std::vector<unsigned> out;
  auto parse_one = [&](const std::string& tok) -> unsigned {
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
      return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw ValidationError("degrees", "bad degree '" + tok + "'");
    }
  };
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const unsigned lo = parse_one(text.substr(0, colon));
    const unsigned hi = parse_one(text.substr(colon + 1));
    if (hi < lo) throw ValidationError("degrees", "range end below range start");
    for (unsigned d = lo; d <= hi; d *= 2) out.push_back(d);
    if (out.back() != hi) throw ValidationError("degrees", "range end is not a doubling of the start");
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_one(tok));
  return out;
}

inline std::vector<std::size_t> parse_index_list(const std::string& field, const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ValidationError(field, "bad entry '" + tok + "'");
    }
  }
  return out;
}

/// Experiment manifest shared by the CLI commands.
struct RunConfig {
  SpectrumDescriptor spectrum;
  std::size_t count = 16;
  std::vector<std::size_t> truncations{4, 8, 16, 20};
  std::vector<unsigned> degrees{8, 16, 32, 64};
  std::vector<std::size_t> characters{1, 2, 3};
  double tol_algebraic = 1e-12;
  double tol_analytic = 1e-3;
  std::optional<double> similarity_threshold;
  std::string out_dir = "amenalab-out";
  OutputFormat format = OutputFormat::csv;

  SpectrumSequence make() const { return make_spectrum(spectrum, count); }

  void validate() const {
    (void)make();
    if (!(tol_algebraic > 0)) throw ValidationError("tol_algebraic", "must be positive");
    if (!(tol_analytic > 0)) throw ValidationError("tol_analytic", "must be positive");
    if (similarity_threshold && !(*similarity_threshold > 0))
      throw ValidationError("similarity_threshold", "must be positive");
    validate_degrees(degrees);
    if (truncations.empty()) throw ValidationError("truncations", "list must not be empty");
    for (std::size_t i = 0; i < truncations.size(); ++i) {
      if (truncations[i] == 0) throw ValidationError("truncations", "entries must be positive");
      if (i > 0 && truncations[i] <= truncations[i - 1])
        throw ValidationError("truncations", "not strictly increasing at position " + std::to_string(i + 1));
    }
    if (spectrum.kind == SpectrumKind::explicit_list && truncations.back() > spectrum.values.size())
      throw ValidationError("truncations", "exceed the explicit spectrum length");
  }

  /// Character indices must name points of the truncation.
  void validate_characters() const {
    if (characters.empty()) throw ValidationError("characters", "list must not be empty");
    for (std::size_t c : characters)
      if (c < 1 || c > count) throw ValidationError("characters", "index " + std::to_string(c) + " outside 1..count");
  }

  /// Canonical JSON; key order is fixed so the hash is reproducible.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json s;
    s["kind"] = to_string(spectrum.kind);
    if (spectrum.kind == SpectrumKind::geometric) s["ratio"] = spectrum.ratio.get_str();
    if (spectrum.kind == SpectrumKind::explicit_list) {
      s["values"] = nlohmann::ordered_json::array();
      for (const auto& v : spectrum.values) s["values"].push_back(v.get_str());
    }
    s["count"] = count;
    j["spectrum"] = s;
    j["truncations"] = truncations;
    j["degrees"] = degrees;
    j["characters"] = characters;
    j["tol_algebraic"] = tol_algebraic;
    j["tol_analytic"] = tol_analytic;
    if (similarity_threshold) j["similarity_threshold"] = *similarity_threshold;
    j["format"] = to_string(format);
    return j;
  }

  /// FNV-1a 64 of the canonical JSON, as 16 hex digits.
  std::string hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json().dump()) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& field) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(mpz_class(std::to_string(v.get<long long>())));
    if (v.is_number()) return rational_from_decimal(v.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(field, e.what());
  }
  throw ValidationError(field, "expected a number or rational string");
}

template <class T>
std::vector<T> json_positive_list(const nlohmann::json& v, const std::string& field) {
  if (v.is_string()) {
    if constexpr (std::is_same_v<T, unsigned>) return parse_degree_list(v.get<std::string>());
    else return parse_index_list(field, v.get<std::string>());
  }
  if (!v.is_array()) throw ValidationError(field, "expected an array");
  std::vector<T> out;
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() <= 0) throw ValidationError(field, "entries must be positive integers");
    out.push_back(static_cast<T>(e.get<long long>()));
  }
  return out;
}

inline double json_positive(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) throw ValidationError(field, "expected a number");
  return v.get<double>();
}

}  // namespace detail

/// Reads the manifest schema
/// {"spectrum": {"kind", "ratio", "count", "values"}, "truncations", "degrees",
///  "characters", "tol_algebraic", "tol_analytic", "similarity_threshold", "format", "out"}
/// on top of `base`; absent keys keep their base values.
inline RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {}) {
  if (!j.is_object()) throw ValidationError("config", "top level must be an object");
  if (j.contains("spectrum")) {
    const auto& s = j["spectrum"];
    if (!s.is_object()) throw ValidationError("spectrum", "expected an object");
    if (s.contains("kind")) base.spectrum.kind = parse_spectrum_kind(s["kind"].get<std::string>());
    if (s.contains("ratio")) base.spectrum.ratio = detail::json_rational(s["ratio"], "ratio");
    if (s.contains("values")) {
      if (!s["values"].is_array()) throw ValidationError("values", "expected an array");
      base.spectrum.values.clear();
      for (const auto& v : s["values"]) base.spectrum.values.push_back(detail::json_rational(v, "values"));
      if (!s.contains("count")) base.count = base.spectrum.values.size();
    }
    if (s.contains("count")) {
      if (!s["count"].is_number_integer() || s["count"].get<long long>() < 0)
        throw ValidationError("count", "expected a non-negative integer");
      base.count = static_cast<std::size_t>(s["count"].get<long long>());
    }
  }
  if (j.contains("truncations")) base.truncations = detail::json_positive_list<std::size_t>(j["truncations"], "truncations");
  if (j.contains("degrees")) base.degrees = detail::json_positive_list<unsigned>(j["degrees"], "degrees");
  if (j.contains("characters")) base.characters = detail::json_positive_list<std::size_t>(j["characters"], "characters");
  if (j.contains("tol_algebraic")) base.tol_algebraic = detail::json_positive(j["tol_algebraic"], "tol_algebraic");
  if (j.contains("tol_analytic")) base.tol_analytic = detail::json_positive(j["tol_analytic"], "tol_analytic");
  if (j.contains("similarity_threshold"))
    base.similarity_threshold = detail::json_positive(j["similarity_threshold"], "similarity_threshold");
  if (j.contains("format")) base.format = parse_format(j["format"].get<std::string>());
  if (j.contains("out")) base.out_dir = j["out"].get<std::string>();
  return base;
}

}  // namespace amenalab
