// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the lsi-forge binary: exit codes, report schema,
// determinism, CSV output, and configuration errors.  The binary path
// arrives in the LSIFORGE_BIN environment variable.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

const std::string& binary_path() {
  static const std::string path = [] {
    const char* env = std::getenv("LSIFORGE_BIN");
    REQUIRE_MESSAGE(env != nullptr,
                    "LSIFORGE_BIN must point at the lsi-forge binary");
    return std::string(env);
  }();
  return path;
}

// Runs the CLI with the given arguments; `prefix` can carry environment
// assignments (the command goes through /bin/sh).
RunResult run_cli(const std::string& args, const std::string& prefix = "",
                  bool merge_stderr = false) {
  const std::string cmd = prefix + binary_path() + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    r.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reports must describe the checked claim in self-contained language.
void check_neutral(const std::string& text) {
  for (const char* banned :
       {"Theorem", "Lemma", "arXiv", "Thm", "paper", "§"}) {
    CHECK_MESSAGE(text.find(banned) == std::string::npos,
                  "report leaks the reference token: ", banned);
  }
}

json parse_report(const std::string& text) {
  json r = json::parse(text);
  REQUIRE(r.contains("schema"));
  CHECK(r["schema"] == "lsi-forge/report/v1");
  CHECK(r["tool"]["name"] == "lsi-forge");
  REQUIRE(r.contains("claim"));
  CHECK_FALSE(r["claim"].get<std::string>().empty());
  REQUIRE(r.contains("config"));
  REQUIRE(r.contains("result"));
  REQUIRE(r.contains("verdict"));
  check_neutral(text);
  return r;
}

std::string strip_timestamp(const std::string& text) {
  std::stringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\"") == std::string::npos) {
      out += line;
      out += '\n';
    }
  }
  return out;
}

}  // namespace

TEST_CASE("verify-lsi passes for the certified six-cycle weight") {
  const RunResult r = run_cli(
      "verify-lsi --n 6 --weight phi6 --samples 1e4 --starts 300 --seed 7");
  CHECK(r.exit_code == 0);
  const json rep = parse_report(r.output);
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["command"] == "verify-lsi");
  // scientific notation resolved into integers, defaults echoed
  CHECK(rep["config"]["samples"] == 10000);
  CHECK(rep["config"]["starts"] == 300);
  CHECK(rep["config"]["weight"] == "phi6");
  CHECK(rep["config"]["seed"] == 7);
  CHECK(rep["config"]["tolerances"]["slack"] == 1e-9);
  CHECK(rep["result"]["min_value"].get<double>() >= -1e-9);
  CHECK(rep["result"]["sampling"]["argmin"].size() == 6);
}

TEST_CASE("pair-check fails on the uncertified word-length pair with witness") {
  const RunResult r = run_cli("pair-check --pair psi4:psi8");
  CHECK(r.exit_code == 1);
  const json rep = parse_report(r.output);
  CHECK(rep["verdict"] == "fail");
  // the five clauses hold; the quadratic inequality is what fails
  CHECK(rep["result"]["pair_condition"]["all"] == true);
  CHECK(rep["result"]["scan"]["ok"] == false);
  REQUIRE(rep["result"].contains("witness"));
  const double x = rep["result"]["witness"]["x"].get<double>();
  const double value = rep["result"]["witness"]["value"].get<double>();
  CHECK(x == doctest::Approx(1.2928932188134525).epsilon(1e-9));
  CHECK(value == doctest::Approx(-0.34314575050762).epsilon(1e-9));
}

TEST_CASE("pair-check certifies a tower pair") {
  const RunResult r = run_cli("pair-check --pair gamma6:gamma12");
  CHECK(r.exit_code == 0);
  const json rep = parse_report(r.output);
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["result"]["scan"]["analytic_checked"] == true);
  CHECK(rep["result"]["scan"]["analytic_max_diff"].get<double>() <= 1e-8);
}

TEST_CASE("hyper-time reproduces the predicted critical time") {
  const RunResult r = run_cli("hyper-time --n 4 --p 2 --q 4");
  CHECK(r.exit_code == 0);
  const json rep = parse_report(r.output);
  const double t_star = rep["result"]["t_star"].get<double>();
  const double lower = rep["result"]["lower_bound"].get<double>();
  CHECK(std::abs(t_star - 0.5493061443340548) <= 1e-2);
  CHECK(lower == doctest::Approx(0.5493061443340548).epsilon(1e-12));
  const double width = rep["result"]["bracket"]["hi"].get<double>() -
                       rep["result"]["bracket"]["lo"].get<double>();
  CHECK(width <= 1e-3 + 1e-12);
  CHECK(rep["result"]["uncertain"] == false);
  CHECK(rep["result"]["probes"].size() >= 2);
}

TEST_CASE("hyper-time embeds the three-cycle closed form when applicable") {
  const RunResult r = run_cli("hyper-time --n 3 --p 2 --q 4");
  CHECK(r.exit_code == 0);
  const json rep = parse_report(r.output);
  REQUIRE(rep["result"].contains("three_cycle_closed_form"));
  CHECK(rep["result"]["three_cycle_closed_form"].get<double>() ==
        doctest::Approx(0.5691280496706789).epsilon(1e-12));
  CHECK(std::abs(rep["result"]["t_star"].get<double>() -
                 rep["result"]["three_cycle_closed_form"].get<double>()) <=
        2e-2);
}

TEST_CASE("kkt-search reports an empty solution set for the four-cycle system") {
  const RunResult r = run_cli("kkt-search --weight phi4 --starts 200");
  CHECK(r.exit_code == 0);
  const json rep = parse_report(r.output);
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["result"]["accepted"] == 0);
  CHECK(rep["result"]["min_terminal_residual"].get<double>() >= 1e-3);
  CHECK(rep["config"]["residual_floor"] == 1e-3);
  long long total = 0;
  for (const auto& c : rep["result"]["histogram"]["counts"]) {
    total += c.get<long long>();
  }
  CHECK(total == 200);
  CHECK_FALSE(rep["result"].contains("solutions"));
}

TEST_CASE("cascade json verdicts for both chains") {
  const RunResult z6 = run_cli("cascade --n 6 --samples 300 --x-max 10");
  CHECK(z6.exit_code == 0);
  const json rep6 = parse_report(z6.output);
  CHECK(rep6["result"]["relations_ok"] == true);
  CHECK(rep6["result"]["monotone_chain_ok"] == true);
  CHECK(rep6["result"]["grid_points"] == 300);
  CHECK(rep6["result"]["h_defined_points"] == 300);

  const RunResult z4 = run_cli("cascade --n 4 --samples 300 --x-max 40");
  CHECK(z4.exit_code == 0);
  const json rep4 = parse_report(z4.output);
  CHECK(rep4["result"]["monotone_chain_ok"] == true);
  CHECK(rep4["result"]["h_defined_points"].get<int>() < 300);
  CHECK(rep4["result"]["notes"].size() == 2);
}

TEST_CASE("induction passes on a certified tower pair") {
  const RunResult r =
      run_cli("induction --pair gamma6:gamma12 --samples 2000");
  CHECK(r.exit_code == 0);
  const json rep = parse_report(r.output);
  CHECK(rep["result"]["min_slack_entropy"].get<double>() >= -1e-9);
  CHECK(rep["result"]["min_slack_dirichlet"].get<double>() >= -1e-9);
  CHECK(rep["config"]["base"]["n"] == 6);
  CHECK(rep["config"]["doubled"]["n"] == 12);
}

TEST_CASE("entropy-split passes and prints its defaults") {
  const RunResult r = run_cli("entropy-split --n 5");
  CHECK(r.exit_code == 0);
  const json rep = parse_report(r.output);
  CHECK(rep["config"]["samples"] == 2000);  // default echoed
  CHECK(rep["config"]["doubled_size"] == 10);
  CHECK(rep["config"]["identity_tolerance"] == 1e-12);
  CHECK(rep["result"]["max_abs_error"].get<double>() <= 1e-12);
}

TEST_CASE("reports are byte-identical modulo the timestamp") {
  const RunResult a = run_cli("hyper-time --n 4 --p 2 --q 4");
  const RunResult b = run_cli("hyper-time --n 4 --p 2 --q 4");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(strip_timestamp(a.output) == strip_timestamp(b.output));
  // thread count changes wall time only, not content
  const RunResult c =
      run_cli("hyper-time --n 4 --p 2 --q 4", "LSI_FORGE_THREADS=2 ");
  const json rc = json::parse(c.output);
  CHECK(rc["config"]["threads_resolved"] == 2);
  CHECK(rc["result"]["t_star"] ==
        json::parse(a.output)["result"]["t_star"]);
}

TEST_CASE("different seeds change stochastic results") {
  const RunResult a =
      run_cli("verify-lsi --n 8 --samples 500 --starts 5 --seed 1");
  const RunResult b =
      run_cli("verify-lsi --n 8 --samples 500 --starts 5 --seed 2");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(json::parse(a.output)["result"]["sampling"]["min_value"] !=
        json::parse(b.output)["result"]["sampling"]["min_value"]);
}

TEST_CASE("csv outputs carry the fixed headers") {
  const RunResult h = run_cli(
      "hyper-time --n 4 --p 2 --q 4 --format csv --out cli_ht.csv");
  CHECK(h.exit_code == 0);
  {
    std::stringstream ss(slurp("cli_ht.csv"));
    std::string header, row;
    std::getline(ss, header);
    CHECK(header == "n,p,q,t_lo,t_hi,t_star,lower_bound");
    CHECK(std::getline(ss, row).good());
    CHECK(row.substr(0, 6) == "4,2,4,");
  }
  std::remove("cli_ht.csv");

  const RunResult c = run_cli(
      "cascade --n 6 --samples 120 --x-max 5 --format csv --out cli_cz6.csv");
  CHECK(c.exit_code == 0);
  {
    std::stringstream ss(slurp("cli_cz6.csv"));
    std::string line;
    std::getline(ss, line);
    CHECK(line == "x,h,h1,h2,h3,h4,h5,h6,h7,h8");
    int rows = 0;
    while (std::getline(ss, line)) {
      if (!line.empty()) ++rows;
    }
    CHECK(rows == 120);
  }
  std::remove("cli_cz6.csv");
}

TEST_CASE("weight files load through the file: prefix") {
  {
    std::ofstream out("cli_weight.json");
    out << R"({"n": 4, "values": [0, 1, 2, 1], "label": "custom-psi4"})";
  }
  const RunResult ok = run_cli(
      "verify-lsi --weight file:cli_weight.json --samples 300 --starts 20");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.output)["config"]["weight"] == "custom-psi4");
  {
    std::ofstream out("cli_weight_bad.json");
    out << "{broken";
  }
  const RunResult bad = run_cli(
      "verify-lsi --weight file:cli_weight_bad.json", "", true);
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("config error") != std::string::npos);
  std::remove("cli_weight.json");
  std::remove("cli_weight_bad.json");
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run_cli("verify-lsi --weight nosuch").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("cascade --n 5").exit_code == 2);
  CHECK(run_cli("verify-lsi --n 4 --samples 0").exit_code == 2);
  CHECK(run_cli("verify-lsi --n 4 --samples 2.5").exit_code == 2);
  CHECK(run_cli("verify-lsi --n 4 --tol nosuch=1").exit_code == 2);
  CHECK(run_cli("verify-lsi --n 3 --weight phi4").exit_code == 2);
  CHECK(run_cli("verify-lsi --n 4 --format csv").exit_code == 2);
  CHECK(run_cli("hyper-time --n 4 --p 2").exit_code == 2);
  CHECK(run_cli("hyper-time --n 4 --p 1.0 --q 4").exit_code == 2);
  CHECK(run_cli("hyper-time --n 4 --p 2 --q 4 --format csv").exit_code == 2);
  CHECK(run_cli("induction --pair psi4:psi8 --samples 50").exit_code == 2);
  CHECK(run_cli("pair-check --pair psi4-psi8").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("--version").exit_code == 0);
}

TEST_CASE("tolerance overrides reach the verdict") {
  // an impossible slack requirement flips the verdict to fail (exit 1)
  const RunResult r = run_cli(
      "verify-lsi --n 4 --samples 200 --starts 10 --tol slack=-1");
  CHECK(r.exit_code == 1);
  const json rep = parse_report(r.output);
  CHECK(rep["verdict"] == "fail");
  CHECK(rep["config"]["tolerances"]["slack"] == -1.0);
  REQUIRE(rep["result"].contains("witness"));
}
