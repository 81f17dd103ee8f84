// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// lsi-forge: command-line entry point for the verification library.
//
// Every subcommand runs one verification, writes a machine-readable report
// (JSON verdict tree, or CSV for tabular scans), and exits with
//   0  every verdict passed,
//   1  a verdict failed; the report carries a witness,
//   2  configuration error (unknown weight, malformed input, bad ranges).
// Reports embed the full effective configuration, including every default
// and the complete tolerance table, so a run can be reproduced from its
// report alone.  For a fixed configuration and seed the JSON output is
// byte-identical except for the timestamp field.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <lsiforge/cascade.hpp>
#include <lsiforge/config.hpp>
#include <lsiforge/dft.hpp>
#include <lsiforge/hyper.hpp>
#include <lsiforge/induction.hpp>
#include <lsiforge/kkt.hpp>
#include <lsiforge/parallel.hpp>
#include <lsiforge/rng.hpp>
#include <lsiforge/spectral.hpp>
#include <lsiforge/weight.hpp>
#include <lsiforge/weight_io.hpp>

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kReportSchema = "lsi-forge/report/v1";
// Residual histograms of a no-solution search must stay above this floor.
constexpr double kResidualFloor = 1e-3;
// Absolute tolerance for the exact entropy-splitting identity.
constexpr double kSplitIdentityTol = 1e-12;

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  std::string weight_spec;
  std::string pair_spec;
  double p = 0.0;
  double q = 0.0;
  std::string samples_text;
  std::string starts_text;
  int resolution = 201;
  double x_max = 50.0;
  std::uint64_t seed = 20260823ULL;
  int threads = 0;
  std::vector<std::string> tol_overrides;
  std::string out_path;
  std::string format = "json";
};

// ---------------------------------------------------------------------------
// parsing helpers

// Accepts plain and scientific notation ("250", "1e6", "2.5e3") for count
// flags; the value must be a positive integer.
long long parse_count(const std::string& text, const std::string& flag) {
  double value = 0.0;
  std::size_t pos = 0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(flag + ": cannot parse '" + text + "'");
  }
  if (pos != text.size()) {
    throw ConfigError(flag + ": trailing characters in '" + text + "'");
  }
  if (!(value >= 1.0) || !(value <= 9.0e15)) {
    throw ConfigError(flag + ": value out of range: '" + text + "'");
  }
  const double rounded = std::round(value);
  if (std::abs(value - rounded) > 1e-6 * std::max(1.0, std::abs(value))) {
    throw ConfigError(flag + ": expected an integer, got '" + text + "'");
  }
  return static_cast<long long>(rounded);
}

long long count_or_default(const std::string& text, const std::string& flag,
                           long long fallback) {
  return text.empty() ? fallback : parse_count(text, flag);
}

bool set_tolerance(lsiforge::Tolerances& tol, const std::string& name,
                   double value) {
  if (name == "unitarity") tol.unitarity = value;
  else if (name == "split_identity") tol.split_identity = value;
  else if (name == "realify") tol.realify = value;
  else if (name == "eigenvalue") tol.eigenvalue = value;
  else if (name == "parseval") tol.parseval = value;
  else if (name == "slack") tol.slack = value;
  else if (name == "frequency_identity") tol.frequency_identity = value;
  else if (name == "kkt_accept") tol.kkt_accept = value;
  else if (name == "kkt_dedup") tol.kkt_dedup = value;
  else if (name == "lambda_clamp") tol.lambda_clamp = value;
  else if (name == "norm_window_margin") tol.norm_window_margin = value;
  else if (name == "unit_norm") tol.unit_norm = value;
  else if (name == "chain_relative") tol.chain_relative = value;
  else if (name == "sign_zero") tol.sign_zero = value;
  else if (name == "sign_positive") tol.sign_positive = value;
  else if (name == "series_guard") tol.series_guard = value;
  else if (name == "series_radius") tol.series_radius = value;
  else if (name == "contractive_threshold") tol.contractive_threshold = value;
  else if (name == "bracket_width") tol.bracket_width = value;
  else if (name == "lower_bound_slack") tol.lower_bound_slack = value;
  else return false;
  return true;
}

lsiforge::Tolerances resolve_tolerances(
    const std::vector<std::string>& overrides) {
  lsiforge::Tolerances tol;
  for (const std::string& spec : overrides) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--tol expects name=value, got '" + spec + "'");
    }
    const std::string name = spec.substr(0, eq);
    const std::string value_text = spec.substr(eq + 1);
    double value = 0.0;
    std::size_t pos = 0;
    try {
      value = std::stod(value_text, &pos);
    } catch (const std::exception&) {
      throw ConfigError("--tol " + name + ": cannot parse '" + value_text +
                        "'");
    }
    if (pos != value_text.size()) {
      throw ConfigError("--tol " + name + ": trailing characters in '" +
                        value_text + "'");
    }
    if (!set_tolerance(tol, name, value)) {
      throw ConfigError("--tol: unknown tolerance name '" + name + "'");
    }
  }
  return tol;
}

lsiforge::Weight resolve_weight(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    try {
      return lsiforge::load_weight(spec.substr(5));
    } catch (const std::exception& e) {
      throw ConfigError("--weight " + spec + ": " + e.what());
    }
  }
  static const std::regex psi_re("psi([0-9]+)");
  static const std::regex gamma1_re("gamma1_([0-9]+)");
  static const std::regex gamma_re("gamma([0-9]+)");
  std::smatch m;
  try {
    if (spec == "phi4") return lsiforge::phi4();
    if (spec == "phi6") return lsiforge::phi6();
    if (std::regex_match(spec, m, psi_re)) {
      return lsiforge::word_length(std::stoi(m[1]));
    }
    if (std::regex_match(spec, m, gamma1_re)) {
      return lsiforge::gamma_odd_base(std::stoi(m[1]));
    }
    if (std::regex_match(spec, m, gamma_re)) {
      return lsiforge::gamma_even_tower(std::stoi(m[1]));
    }
  } catch (const std::exception& e) {
    throw ConfigError("--weight " + spec + ": " + e.what());
  }
  throw ConfigError("unknown weight name '" + spec +
                    "' (expected psiN, phi4, phi6, gammaN, gamma1_N, or "
                    "file:PATH)");
}

// Picks the weight for commands taking --n and/or --weight: an explicit
// weight wins, --n alone means the word-length weight psiN, and an
// inconsistent combination is rejected.
lsiforge::Weight select_weight(const Options& o) {
  if (o.weight_spec.empty()) {
    if (o.n <= 0) {
      throw ConfigError("provide --weight, or --n for the word-length weight");
    }
    try {
      return lsiforge::word_length(o.n);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--n: ") + e.what());
    }
  }
  lsiforge::Weight w = resolve_weight(o.weight_spec);
  if (o.n > 0 && w.n != o.n) {
    throw ConfigError("--n " + std::to_string(o.n) +
                      " conflicts with weight '" + w.label + "' of size " +
                      std::to_string(w.n));
  }
  return w;
}

// Splits "A:B" into two weights.  Because weight specs may themselves
// contain ':' (file:PATH), every split point is tried until both halves
// resolve.
std::pair<lsiforge::Weight, lsiforge::Weight> resolve_pair(
    const std::string& spec) {
  std::string last_error = "no ':' separator found";
  for (std::size_t pos = spec.find(':'); pos != std::string::npos;
       pos = spec.find(':', pos + 1)) {
    const std::string left = spec.substr(0, pos);
    const std::string right = spec.substr(pos + 1);
    if (left.empty() || right.empty()) continue;
    try {
      return {resolve_weight(left), resolve_weight(right)};
    } catch (const ConfigError& e) {
      last_error = e.what();
    }
  }
  throw ConfigError("cannot parse --pair '" + spec +
                    "' as BASE:DOUBLED (" + last_error + ")");
}

// ---------------------------------------------------------------------------
// report plumbing

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json vec_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

ordered_json tol_json(const lsiforge::Tolerances& tol) {
  ordered_json obj = ordered_json::object();
  for (const auto& [name, value] : tol.items()) obj[name] = value;
  return obj;
}

ordered_json make_envelope(const std::string& command,
                           const std::string& claim) {
  ordered_json report;
  report["schema"] = kReportSchema;
  report["tool"] = {{"name", "lsi-forge"}, {"version", kVersion}};
  report["command"] = command;
  report["claim"] = claim;
  report["timestamp"] = iso_timestamp();
  return report;
}

// Writes the JSON report and returns the process exit code.
int finish(ordered_json& report, const Options& o, bool pass) {
  report["verdict"] = pass ? "pass" : "fail";
  const std::string text = report.dump(2) + "\n";
  if (o.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.out_path);
    if (!out) throw ConfigError("cannot open --out path '" + o.out_path + "'");
    out << text;
    std::cout << report["command"].get<std::string>() << ": "
              << (pass ? "pass" : "fail") << " (report: " << o.out_path
              << ")\n";
  }
  return pass ? 0 : 1;
}

void require_json_format(const Options& o, const std::string& command) {
  if (o.format != "json") {
    throw ConfigError("--format " + o.format + " is not available for " +
                      command + " (JSON verdict tree only)");
  }
}

// ---------------------------------------------------------------------------
// subcommands

int run_verify_lsi(const Options& o) {
  require_json_format(o, "verify-lsi");
  const lsiforge::Tolerances tol = resolve_tolerances(o.tol_overrides);
  const lsiforge::Weight w = select_weight(o);
  const long long samples =
      count_or_default(o.samples_text, "--samples", 100000);
  const long long starts = count_or_default(o.starts_text, "--starts", 2000);

  const lsiforge::SpectralForm form = lsiforge::build_form(w, tol);
  const lsiforge::SphereMinimum sampled =
      lsiforge::sample_minimum(form, samples, o.seed, o.threads);
  const lsiforge::SphereMinimum descended = lsiforge::minimize_on_sphere(
      form, starts, o.seed ^ 0x9e3779b97f4a7c15ULL, o.threads, tol);
  const double min_value = std::min(sampled.value, descended.value);
  const bool pass = min_value >= -tol.slack;

  ordered_json report = make_envelope(
      "verify-lsi",
      "the spectral entropy objective is nonnegative on the nonnegative unit "
      "sphere (seeded sampling plus projected-descent evidence)");
  report["config"] = {{"n", w.n},
                      {"weight", w.label},
                      {"samples", samples},
                      {"starts", starts},
                      {"seed", o.seed},
                      {"threads_requested", o.threads},
                      {"threads_resolved",
                       lsiforge::resolve_thread_count(o.threads)},
                      {"format", o.format},
                      {"tolerances", tol_json(tol)}};
  ordered_json result;
  result["sampling"] = {{"min_value", sampled.value},
                        {"argmin", vec_json(sampled.lambda)}};
  result["descent"] = {{"min_value", descended.value},
                       {"gradient_norm", descended.gradient_norm},
                       {"argmin", vec_json(descended.lambda)}};
  result["min_value"] = min_value;
  result["floor"] = -tol.slack;
  if (!pass) {
    const bool sampling_worse = sampled.value <= descended.value;
    result["witness"] = {
        {"lambda", vec_json(sampling_worse ? sampled.lambda
                                           : descended.lambda)},
        {"value", min_value},
        {"found_by", sampling_worse ? "sampling" : "descent"}};
  }
  report["result"] = std::move(result);
  return finish(report, o, pass);
}

int run_kkt_search(const Options& o) {
  require_json_format(o, "kkt-search");
  const lsiforge::Tolerances tol = resolve_tolerances(o.tol_overrides);
  const lsiforge::Weight w = select_weight(o);
  const long long starts = count_or_default(o.starts_text, "--starts", 10000);

  const lsiforge::SpectralForm form = lsiforge::build_form(w, tol);
  lsiforge::SearchStats stats;
  const std::vector<lsiforge::KKTState> solutions =
      lsiforge::kkt_search(form, starts, o.seed, o.threads, &stats, tol);
  const bool floor_ok = stats.min_terminal_residual >= kResidualFloor;
  const bool pass = solutions.empty() && floor_ok;

  ordered_json report = make_envelope(
      "kkt-search",
      "the absorbed first-order stationarity system admits no feasible "
      "solution: every multi-start search residual stays above the floor");
  report["config"] = {{"n", w.n},
                      {"weight", w.label},
                      {"starts", starts},
                      {"seed", o.seed},
                      {"threads_requested", o.threads},
                      {"threads_resolved",
                       lsiforge::resolve_thread_count(o.threads)},
                      {"residual_floor", kResidualFloor},
                      {"format", o.format},
                      {"tolerances", tol_json(tol)}};
  ordered_json result;
  result["accepted"] = stats.accepted;
  result["min_terminal_residual"] = stats.min_terminal_residual;
  result["residual_floor_ok"] = floor_ok;
  result["histogram"] = {{"bin_edges", stats.bin_edges},
                         {"counts", stats.histogram}};
  if (!solutions.empty()) {
    ordered_json list = ordered_json::array();
    for (const lsiforge::KKTState& s : solutions) {
      list.push_back({{"lambda", vec_json(s.lambda)},
                      {"nu", vec_json(s.nu)},
                      {"residual_norm", s.residual_norm()}});
    }
    result["solutions"] = std::move(list);
  }
  report["result"] = std::move(result);
  return finish(report, o, pass);
}

int run_cascade(const Options& o) {
  if (o.n != 4 && o.n != 6) {
    throw ConfigError(
        "--n must be 4 or 6: the derivative cascade is defined for the "
        "four-cycle and six-cycle chains");
  }
  if (o.format != "json" && o.format != "csv") {
    throw ConfigError("--format must be json or csv for cascade");
  }
  const lsiforge::Tolerances tol = resolve_tolerances(o.tol_overrides);
  const long long samples =
      count_or_default(o.samples_text, "--samples", 100000);
  const lsiforge::CascadeReport rep =
      o.n == 6 ? lsiforge::cascade_chain_z6(o.x_max, samples, o.threads, tol)
               : lsiforge::cascade_chain_z4(o.x_max, samples, o.threads, tol);
  const bool pass = rep.monotone_chain_ok;

  if (o.format == "csv") {
    if (o.out_path.empty()) {
      lsiforge::write_cascade_csv(rep, std::cout);
    } else {
      std::ofstream out(o.out_path);
      if (!out) {
        throw ConfigError("cannot open --out path '" + o.out_path + "'");
      }
      lsiforge::write_cascade_csv(rep, out);
      std::cout << "cascade: " << (pass ? "pass" : "fail")
                << " (grid: " << o.out_path << ")\n";
    }
    return pass ? 0 : 1;
  }

  ordered_json report = make_envelope(
      "cascade",
      "the auxiliary function and its derivative chain satisfy the value "
      "table at 1, the defining relations, and positivity on the scan grid");
  report["config"] = {{"n", o.n},
                      {"case", rep.case_id},
                      {"x_max", o.x_max},
                      {"samples", samples},
                      {"threads_requested", o.threads},
                      {"threads_resolved",
                       lsiforge::resolve_thread_count(o.threads)},
                      {"format", o.format},
                      {"tolerances", tol_json(tol)}};
  ordered_json result;
  result["grid_points"] = rep.grid.size();
  result["h_defined_points"] = rep.h_defined_points;
  ordered_json values = ordered_json::array();
  for (const auto& [name, value] : rep.values_at_one) {
    values.push_back({{"name", name}, {"value", value}});
  }
  result["values_at_one"] = std::move(values);
  result["values_at_one_ok"] = rep.values_at_one_ok;
  ordered_json signs = ordered_json::object();
  for (const auto& [name, ok] : rep.sign_verdicts) signs[name] = ok;
  result["sign_verdicts"] = std::move(signs);
  ordered_json relations = ordered_json::array();
  for (const lsiforge::RelationCheck& rc : rep.relation_checks) {
    relations.push_back({{"name", rc.name},
                         {"ok", rc.ok},
                         {"max_error", rc.max_error},
                         {"x_worst", rc.x_worst},
                         {"points_checked", rc.points_checked}});
  }
  result["relations"] = std::move(relations);
  result["relations_ok"] = rep.relations_ok;
  result["monotone_chain_ok"] = rep.monotone_chain_ok;
  result["notes"] = rep.notes;
  report["result"] = std::move(result);
  return finish(report, o, pass);
}

int run_pair_check(const Options& o) {
  require_json_format(o, "pair-check");
  const lsiforge::Tolerances tol = resolve_tolerances(o.tol_overrides);
  auto [base, doubled] = resolve_pair(o.pair_spec);
  const lsiforge::PairReport pr =
      lsiforge::check_pair_condition(base, doubled);
  const lsiforge::QuadraticScan scan =
      lsiforge::scan_quadratic(base, doubled, o.resolution, o.threads, tol);
  const bool pass = pr.all() && scan.verdict;

  ordered_json report = make_envelope(
      "pair-check",
      "the weight pair satisfies the five doubling clauses and the scalar "
      "quadratic inequality enabling the Dirichlet-form comparison");
  report["config"] = {{"pair", o.pair_spec},
                      {"base", {{"label", base.label}, {"n", base.n}}},
                      {"doubled", {{"label", doubled.label}, {"n", doubled.n}}},
                      {"resolution", o.resolution},
                      {"threads_requested", o.threads},
                      {"threads_resolved",
                       lsiforge::resolve_thread_count(o.threads)},
                      {"format", o.format},
                      {"tolerances", tol_json(tol)}};
  ordered_json result;
  result["pair_condition"] = {{"zeros_ok", pr.zeros_ok},
                              {"base_symmetric", pr.base_symmetric},
                              {"doubled_symmetric", pr.doubled_symmetric},
                              {"dominates_base", pr.dominates_base},
                              {"gap_ok", pr.gap_ok},
                              {"all", pr.all()}};
  if (!pr.all()) result["pair_condition"]["first_failure"] = pr.first_failure();
  result["scan"] = {{"min_value", scan.min_value},
                    {"min_location",
                     {{"x", scan.min_location[0]},
                      {"r_a", scan.min_location[1]},
                      {"r_b", scan.min_location[2]}}},
                    {"ok", scan.verdict},
                    {"analytic_checked", scan.analytic_checked},
                    {"analytic_max_diff", scan.analytic_max_diff}};
  if (!scan.verdict) {
    result["witness"] = {{"x", scan.min_location[0]},
                         {"r_a", scan.min_location[1]},
                         {"r_b", scan.min_location[2]},
                         {"value", scan.min_value}};
  }
  report["result"] = std::move(result);
  return finish(report, o, pass);
}

int run_induction(const Options& o) {
  require_json_format(o, "induction");
  const lsiforge::Tolerances tol = resolve_tolerances(o.tol_overrides);
  auto [base, doubled] = resolve_pair(o.pair_spec);
  const long long samples =
      count_or_default(o.samples_text, "--samples", 100000);
  const lsiforge::InductionReport rep = lsiforge::induction_step(
      base, doubled, samples, o.seed, o.threads, tol);
  const bool pass = rep.ok;

  ordered_json report = make_envelope(
      "induction",
      "sampled doubling chain: the doubled-cycle entropy is at most the "
      "half-size comparison sum, which is at most twice the doubled "
      "Dirichlet form");
  report["config"] = {{"pair", o.pair_spec},
                      {"base", {{"label", base.label}, {"n", base.n}}},
                      {"doubled", {{"label", doubled.label}, {"n", doubled.n}}},
                      {"samples", samples},
                      {"seed", o.seed},
                      {"threads_requested", o.threads},
                      {"threads_resolved",
                       lsiforge::resolve_thread_count(o.threads)},
                      {"format", o.format},
                      {"tolerances", tol_json(tol)}};
  ordered_json result;
  result["min_slack_entropy"] = rep.min_slack_entropy;
  result["min_slack_dirichlet"] = rep.min_slack_dirichlet;
  result["slack_floor"] = -tol.slack;
  result["worst_entropy_lambda"] = vec_json(rep.worst_entropy_lambda);
  result["worst_dirichlet_lambda"] = vec_json(rep.worst_dirichlet_lambda);
  if (!pass) {
    const bool entropy_worse =
        rep.min_slack_entropy <= rep.min_slack_dirichlet;
    result["witness"] = {
        {"lambda", vec_json(entropy_worse ? rep.worst_entropy_lambda
                                          : rep.worst_dirichlet_lambda)},
        {"slack", std::min(rep.min_slack_entropy, rep.min_slack_dirichlet)},
        {"side", entropy_worse ? "entropy" : "dirichlet"}};
  }
  report["result"] = std::move(result);
  return finish(report, o, pass);
}

int run_hyper_time(const Options& o) {
  if (o.format != "json" && o.format != "csv") {
    throw ConfigError("--format must be json or csv for hyper-time");
  }
  const lsiforge::Tolerances tol = resolve_tolerances(o.tol_overrides);
  const lsiforge::Weight w = select_weight(o);
  const long long starts = count_or_default(o.starts_text, "--starts", 64);
  const lsiforge::HypTimeEstimate est = lsiforge::estimate_optimal_time(
      w, o.p, o.q, starts, o.seed, o.threads, tol);
  const bool pass =
      !est.uncertain && est.t_star >= est.lower_bound - tol.lower_bound_slack;

  if (o.format == "csv") {
    if (o.out_path.empty()) {
      throw ConfigError("--format csv requires --out for hyper-time");
    }
    lsiforge::write_hyp_csv({est}, o.out_path);
    std::cout << "hyper-time: " << (pass ? "pass" : "fail")
              << " (table: " << o.out_path << ")\n";
    return pass ? 0 : 1;
  }

  ordered_json report = make_envelope(
      "hyper-time",
      "the bisection bracket for the optimal contractive time is consistent "
      "with the universal lower bound (1/2) log((q-1)/(p-1))");
  report["config"] = {{"n", w.n},
                      {"weight", w.label},
                      {"p", o.p},
                      {"q", o.q},
                      {"starts", starts},
                      {"seed", o.seed},
                      {"threads_requested", o.threads},
                      {"threads_resolved",
                       lsiforge::resolve_thread_count(o.threads)},
                      {"format", o.format},
                      {"tolerances", tol_json(tol)}};
  ordered_json result;
  result["t_star"] = est.t_star;
  result["lower_bound"] = est.lower_bound;
  result["bracket"] = {{"lo", est.bracket.first}, {"hi", est.bracket.second}};
  result["uncertain"] = est.uncertain;
  ordered_json probes = ordered_json::array();
  for (const auto& [t, ratio] : est.max_ratio_at_t) {
    probes.push_back({{"t", t}, {"max_ratio", ratio}});
  }
  result["probes"] = std::move(probes);
  if (w.n == 3 && o.p == 2.0 && o.q > 2.0) {
    result["three_cycle_closed_form"] = lsiforge::z3_time_formula(o.q);
  }
  report["result"] = std::move(result);
  return finish(report, o, pass);
}

int run_entropy_split(const Options& o) {
  require_json_format(o, "entropy-split");
  const lsiforge::Tolerances tol = resolve_tolerances(o.tol_overrides);
  if (o.n < 1) throw ConfigError("--n must be a positive half-cycle size");
  const long long samples =
      count_or_default(o.samples_text, "--samples", 2000);

  std::mt19937_64 rng = lsiforge::chunk_rng(o.seed, 0);
  double max_err = 0.0;
  Eigen::VectorXd worst_a, worst_b;
  for (long long i = 0; i < samples; ++i) {
    Eigen::VectorXd a = lsiforge::random_positive_sphere(rng, o.n);
    Eigen::VectorXd b = lsiforge::random_positive_sphere(rng, o.n);
    if (i % 4 == 1) a *= 3.0;            // unequal masses
    if (i % 4 == 2) b *= 0.1;            // strongly unequal masses
    const lsiforge::EntropySplit split = lsiforge::entropy_split(a, b);
    const double direct = lsiforge::entropy(lsiforge::interleave(a, b));
    const double err = std::abs(split.sum() - direct);
    if (err > max_err) {
      max_err = err;
      worst_a = a;
      worst_b = b;
    }
  }
  const bool pass = max_err <= kSplitIdentityTol;

  ordered_json report = make_envelope(
      "entropy-split",
      "the doubled-cycle entropy decomposes exactly into the two half-cycle "
      "entropies plus the norm-splitting term");
  report["config"] = {{"n", o.n},
                      {"doubled_size", 2 * o.n},
                      {"samples", samples},
                      {"seed", o.seed},
                      {"identity_tolerance", kSplitIdentityTol},
                      {"format", o.format},
                      {"tolerances", tol_json(tol)}};
  ordered_json result;
  result["max_abs_error"] = max_err;
  if (!pass) {
    result["witness"] = {{"a", vec_json(worst_a)}, {"b", vec_json(worst_b)}};
  }
  report["result"] = std::move(result);
  return finish(report, o, pass);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{
      "lsi-forge: numerical verification of entropy inequalities, "
      "stationarity systems, derivative cascades, size-doubling comparisons, "
      "and contractive times on cyclic groups"};
  app.set_version_flag("--version", std::string("lsi-forge ") + kVersion);
  app.require_subcommand(1);

  const std::string weight_help =
      "weight: psiN (word length), phi4, phi6, gammaN (even tower), "
      "gamma1_N (odd base), or file:PATH";
  const std::string tol_help = "tolerance override name=value (repeatable)";

  CLI::App* verify = app.add_subcommand(
      "verify-lsi",
      "Certify nonnegativity of the spectral entropy objective by seeded "
      "sampling plus projected-gradient descent");
  verify->add_option("--n", o.n, "cycle size (selects psiN when --weight is omitted)");
  verify->add_option("--weight", o.weight_spec, weight_help);
  verify->add_option("--samples", o.samples_text,
                     "sphere samples, scientific notation accepted (default 1e5)");
  verify->add_option("--starts", o.starts_text,
                     "descent starts (default 2000)");
  verify->add_option("--seed", o.seed, "RNG seed (default 20260823)");
  verify->add_option("--threads", o.threads,
                     "worker threads (0 = LSI_FORGE_THREADS or 1)");
  verify->add_option("--tol", o.tol_overrides, tol_help);
  verify->add_option("--out", o.out_path, "report path (default: stdout)");
  verify->add_option("--format", o.format, "report format (json)");

  CLI::App* kkt = app.add_subcommand(
      "kkt-search",
      "Search for solutions of the absorbed stationarity system; an empty "
      "result with a residual floor is no-solution evidence");
  kkt->add_option("--n", o.n, "cycle size (selects psiN when --weight is omitted)");
  kkt->add_option("--weight", o.weight_spec, weight_help);
  kkt->add_option("--starts", o.starts_text,
                  "search starts, scientific notation accepted (default 1e4)");
  kkt->add_option("--seed", o.seed, "RNG seed (default 20260823)");
  kkt->add_option("--threads", o.threads,
                  "worker threads (0 = LSI_FORGE_THREADS or 1)");
  kkt->add_option("--tol", o.tol_overrides, tol_help);
  kkt->add_option("--out", o.out_path, "report path (default: stdout)");
  kkt->add_option("--format", o.format, "report format (json)");

  CLI::App* cascade = app.add_subcommand(
      "cascade",
      "Verify the auxiliary-function derivative chain (value table, "
      "relations, positivity) on a dense grid");
  cascade->add_option("--n", o.n, "chain selector: 4 or 6")->required();
  cascade->add_option("--samples", o.samples_text,
                      "grid points, scientific notation accepted (default 1e5)");
  cascade->add_option("--x-max", o.x_max, "right end of the scan grid (default 50)");
  cascade->add_option("--threads", o.threads,
                      "worker threads (0 = LSI_FORGE_THREADS or 1)");
  cascade->add_option("--tol", o.tol_overrides, tol_help);
  cascade->add_option("--out", o.out_path, "report path (default: stdout)");
  cascade->add_option("--format", o.format,
                      "json (verdict tree) or csv (sampled grid)");

  CLI::App* pair = app.add_subcommand(
      "pair-check",
      "Check the five doubling clauses and the quadratic inequality for a "
      "weight pair");
  pair->add_option("--pair", o.pair_spec, "weight pair BASE:DOUBLED")
      ->required();
  pair->add_option("--resolution", o.resolution,
                   "grid resolution per axis (default 201)");
  pair->add_option("--threads", o.threads,
                   "worker threads (0 = LSI_FORGE_THREADS or 1)");
  pair->add_option("--tol", o.tol_overrides, tol_help);
  pair->add_option("--out", o.out_path, "report path (default: stdout)");
  pair->add_option("--format", o.format, "report format (json)");

  CLI::App* induction = app.add_subcommand(
      "induction",
      "Monte-Carlo check of the sampled doubling chain for a certified "
      "weight pair");
  induction->add_option("--pair", o.pair_spec, "weight pair BASE:DOUBLED")
      ->required();
  induction->add_option("--samples", o.samples_text,
                        "sample count, scientific notation accepted (default 1e5)");
  induction->add_option("--seed", o.seed, "RNG seed (default 20260823)");
  induction->add_option("--threads", o.threads,
                        "worker threads (0 = LSI_FORGE_THREADS or 1)");
  induction->add_option("--tol", o.tol_overrides, tol_help);
  induction->add_option("--out", o.out_path, "report path (default: stdout)");
  induction->add_option("--format", o.format, "report format (json)");

  CLI::App* hyper = app.add_subcommand(
      "hyper-time",
      "Bisect for the optimal contractive time between two norms");
  hyper->add_option("--n", o.n, "cycle size (selects psiN when --weight is omitted)");
  hyper->add_option("--weight", o.weight_spec, weight_help);
  hyper->add_option("--p", o.p, "source exponent (> 1)")->required();
  hyper->add_option("--q", o.q, "target exponent (>= p)")->required();
  hyper->add_option("--starts", o.starts_text,
                    "maximizer starts per probe (default 64)");
  hyper->add_option("--seed", o.seed, "RNG seed (default 20260823)");
  hyper->add_option("--threads", o.threads,
                    "worker threads (0 = LSI_FORGE_THREADS or 1)");
  hyper->add_option("--tol", o.tol_overrides, tol_help);
  hyper->add_option("--out", o.out_path, "report path (default: stdout)");
  hyper->add_option("--format", o.format,
                    "json (verdict tree) or csv (time table; needs --out)");

  CLI::App* split = app.add_subcommand(
      "entropy-split",
      "Check the exact entropy splitting identity for interleaved vectors");
  split->add_option("--n", o.n, "half-cycle size (vectors a, b have length n)")
      ->required();
  split->add_option("--samples", o.samples_text,
                    "random pairs, scientific notation accepted (default 2000)");
  split->add_option("--seed", o.seed, "RNG seed (default 20260823)");
  split->add_option("--tol", o.tol_overrides, tol_help);
  split->add_option("--out", o.out_path, "report path (default: stdout)");
  split->add_option("--format", o.format, "report format (json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify_lsi(o);
    if (kkt->parsed()) return run_kkt_search(o);
    if (cascade->parsed()) return run_cascade(o);
    if (pair->parsed()) return run_pair_check(o);
    if (induction->parsed()) return run_induction(o);
    if (hyper->parsed()) return run_hyper_time(o);
    if (split->parsed()) return run_entropy_split(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
