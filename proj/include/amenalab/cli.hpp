#pragma once

#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "amenalab/config.hpp"
#include "amenalab/verify.hpp"

namespace amenalab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdictFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

/// Runs the requested targets concurrently and merges them in target order.
inline std::vector<ClaimResult> run_verify_parallel(VerifyTarget target, const RunConfig& config) {
  if (target != VerifyTarget::all) return run_verify(target, config);
  std::vector<std::future<std::vector<ClaimResult>>> parts;
  for (auto t : {VerifyTarget::weak, VerifyTarget::character, VerifyTarget::similarity, VerifyTarget::derivations})
    parts.push_back(std::async(std::launch::async, [t, &config] { return run_verify(t, config); }));
  std::vector<ClaimResult> out;
  for (auto& f : parts)
    for (auto& c : f.get()) out.push_back(std::move(c));
  return out;
}

inline std::string render_report(const ConvergenceReport& report, const std::string& command, const RunConfig& config) {
  if (config.format == OutputFormat::csv) return report.to_csv(command, config.hash());
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config_hash"] = config.hash();
  j["config"] = config.to_json();
  j["report"] = report.to_json();
  return j.dump(2) + "\n";
}

inline int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  const SpectrumSequence s = config.make();
  out << "# amenalab spectrum " << config.hash() << "\n";
  out << "kind," << to_string(s.descriptor().kind) << "\n";
  out << "M," << s.size() << "\n";
  out << "T_norm," << format_number(operator_norm(build_T<double>(s))) << "\n";
  out << "tail_bound," << format_number(s.tail_bound().get_d()) << "\n";
  out << "n,lambda,lambda_exact,E_norm,tail_sup\n";
  for (std::size_t n = 1; n <= s.size(); ++n) {
    const double l = s.lambda_d(n);
    // ||E_n|| = sqrt(1/lambda_n + 1); sup of the spectrum beyond n is lambda_{n+1}.
    const double tail = n < s.size() ? s.lambda_d(n + 1) : 0.0;
    out << n << "," << format_number(l) << "," << to_string(s.lambda(n)) << ","
        << format_number(std::sqrt(1.0 / l + 1.0)) << "," << format_number(tail) << "\n";
  }
  return kExitPass;
}

inline int cmd_verify(VerifyTarget target, const RunConfig& config, std::ostream& out) {
  const std::vector<ClaimResult> claims = run_verify_parallel(target, config);
  std::filesystem::create_directories(config.out_dir);
  const std::string ext = config.format == OutputFormat::csv ? ".csv" : ".json";
  bool all = true;
  for (const auto& c : claims) {
    const std::filesystem::path file = std::filesystem::path(config.out_dir) / (c.report.name() + ext);
    std::ofstream(file, std::ios::binary) << render_report(c.report, "verify", config);
    const bool ok = c.report.passed();
    all = all && ok;
    out << (ok ? "PASS " : "FAIL ") << c.claim << " [" << c.test_name << "] -> " << file.string() << "\n";
  }
  return all ? kExitPass : kExitVerdictFailure;
}

/// Whole command line; returns the process exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"amenalab: finite-section experiments on a non-normal operator algebra"};
  app.require_subcommand(1);

  std::string config_path, kind, ratio, values, truncations, degrees, characters, out_dir, format;
  std::size_t count = 0;
  double tol_alg = 0, tol_an = 0, threshold = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON manifest; flags override it");
    sub->add_option("--kind", kind, "geometric | harmonic | explicit");
    sub->add_option("--ratio", ratio, "geometric ratio, decimal or p/q");
    sub->add_option("--values", values, "explicit spectrum, comma separated");
    sub->add_option("--count", count, "truncation size M");
    sub->add_option("--truncations", truncations, "comma list of M values");
    sub->add_option("--degrees", degrees, "a:b (doublings) or comma list");
    sub->add_option("--characters", characters, "comma list of character indices");
    sub->add_option("--tol-algebraic", tol_alg);
    sub->add_option("--tol-analytic", tol_an);
    sub->add_option("--similarity-threshold", threshold);
    sub->add_option("--out", out_dir, "report directory");
    sub->add_option("--format", format, "csv | json");
  };
  CLI::App* spectrum = app.add_subcommand("spectrum", "print the spectrum and derived constants");
  add_common(spectrum);
  CLI::App* verify = app.add_subcommand("verify", "run verification pipelines and write reports");
  std::string target = "all";
  verify->add_option("target", target, "weak | character | similarity | derivations | all");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInvalidConfig;
  }

  auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
  CLI::App* sub = spectrum->parsed() ? spectrum : verify;
  try {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ValidationError("config", "cannot open " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config", std::string("malformed JSON: ") + e.what());
      }
      config = config_from_json(j, config);
    }
    if (given(sub, "--kind")) config.spectrum.kind = parse_spectrum_kind(kind);
    auto rational_field = [](const std::string& field, const std::string& text) {
      try {
        return parse_rational(text);
      } catch (const std::invalid_argument& e) {
        throw ValidationError(field, e.what());
      }
    };
    if (given(sub, "--ratio")) config.spectrum.ratio = rational_field("ratio", ratio);
    if (given(sub, "--values")) {
      config.spectrum.values.clear();
      std::stringstream ss(values);
      std::string tok;
      while (std::getline(ss, tok, ',')) config.spectrum.values.push_back(rational_field("values", tok));
      if (!given(sub, "--kind")) config.spectrum.kind = SpectrumKind::explicit_list;
      if (!given(sub, "--count")) config.count = config.spectrum.values.size();
    }
    if (given(sub, "--count")) config.count = count;
    if (given(sub, "--truncations")) config.truncations = parse_index_list("truncations", truncations);
    if (given(sub, "--degrees")) config.degrees = parse_degree_list(degrees);
    if (given(sub, "--characters")) config.characters = parse_index_list("characters", characters);
    if (given(sub, "--tol-algebraic")) config.tol_algebraic = tol_alg;
    if (given(sub, "--tol-analytic")) config.tol_analytic = tol_an;
    if (given(sub, "--similarity-threshold")) config.similarity_threshold = threshold;
    if (given(sub, "--out")) config.out_dir = out_dir;
    if (given(sub, "--format")) config.format = parse_format(format);
    const VerifyTarget t = parse_target(target);
    config.validate();
    if (sub == verify && (t == VerifyTarget::character || t == VerifyTarget::all)) config.validate_characters();
    if (sub == spectrum) return cmd_spectrum(config, out);
    return cmd_verify(t, config, out);
  } catch (const ValidationError& e) {
    err << "invalid configuration: " << e.field() << ": " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid configuration: config: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
}

}  // namespace amenalab
