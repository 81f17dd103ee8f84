// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checklist: eight end-to-end criteria with fixed sizes, seeds,
// tolerances, and runtime budgets, printing one verdict line per criterion.
//
//   usage: acceptance [criterion-number ...]
//
// With no arguments every criterion runs.  Exit code 0 when every selected
// criterion passes, 1 otherwise.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <lsiforge/cascade.hpp>
#include <lsiforge/config.hpp>
#include <lsiforge/dft.hpp>
#include <lsiforge/hyper.hpp>
#include <lsiforge/induction.hpp>
#include <lsiforge/kkt.hpp>
#include <lsiforge/rational.hpp>
#include <lsiforge/rng.hpp>
#include <lsiforge/spectral.hpp>
#include <lsiforge/weight.hpp>

#include "oracles.hpp"

namespace {

using lsiforge::Rational;
using lsiforge::Weight;

constexpr std::uint64_t kSeed = 20260823ULL;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

bool check(bool ok, const char* what) {
  if (!ok) std::printf("    FAILED: %s\n", what);
  return ok;
}

// ---------------------------------------------------------------------------
// 1. Exact rational reproduction of the two displayed spectral matrices.

bool criterion1() {
  const double kBudgetSeconds = 1.0;
  const auto t0 = std::chrono::steady_clock::now();

  const lsiforge::SpectralForm f6 = lsiforge::build_form(lsiforge::phi6());
  const lsiforge::SpectralForm f4 = lsiforge::build_form(lsiforge::phi4());
  bool ok = check(f6.exact, "six-cycle form is exactly rational");
  ok &= check(f4.exact, "four-cycle form is exactly rational");

  const std::vector<Rational> col6 = {Rational(7, 36),  Rational(-1, 18),
                                      Rational(-1, 18), Rational(1, 36),
                                      Rational(-1, 18), Rational(-1, 18)};
  const std::vector<Rational> col4 = {Rational(9, 40), Rational(-1, 10),
                                      Rational(-1, 40), Rational(-1, 10)};
  ok &= check(f6.first_column_exact == col6,
              "six-cycle first column = (7/36, -1/18, -1/18, 1/36, ...)");
  ok &= check(f4.first_column_exact == col4,
              "four-cycle first column = (9/40, -1/10, -1/40, -1/10)");
  // circulant structure: entry (j, k) equals first-column entry (j - k mod n)
  for (const auto* form : {&f6, &f4}) {
    const int n = form->n;
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double expect =
            form->first_column_exact[((j - k) % n + n) % n].to_double();
        worst = std::max(worst, std::abs(form->matrix(j, k) - expect));
      }
    }
    ok &= check(worst <= 1e-15, "matrix is the circulant of its first column");
  }
  const double dt = seconds_since(t0);
  std::printf("    both matrices exact; elapsed %.3f s\n", dt);
  return ok && check(dt < kBudgetSeconds, "runtime under 1 s");
}

// ---------------------------------------------------------------------------
// 2. Nonnegativity of the entropy objective on the nonnegative sphere:
//    1e6 seeded samples plus 1e5 projected-gradient starts per weight.

bool criterion2() {
  const double kFloor = -1e-9;
  const double kBudgetPerCase = 300.0;
  const long long kSamples = 1000000;
  const long long kStarts = 100000;

  std::vector<Weight> cases = {lsiforge::phi6(), lsiforge::phi4()};
  for (int n : {8, 12, 16, 24}) cases.push_back(lsiforge::word_length(n));

  bool ok = true;
  for (const Weight& w : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const lsiforge::SpectralForm form = lsiforge::build_form(w);
    const lsiforge::SphereMinimum sampled =
        lsiforge::sample_minimum(form, kSamples, kSeed);
    const lsiforge::SphereMinimum descended = lsiforge::minimize_on_sphere(
        form, kStarts, kSeed ^ 0x9e3779b97f4a7c15ULL);
    const double dt = seconds_since(t0);
    const double min_value = std::min(sampled.value, descended.value);
    std::printf("    %-8s sampled % .3e descended % .3e  (%.1f s)\n",
                w.label.c_str(), sampled.value, descended.value, dt);
    ok &= check(min_value >= kFloor, "minimum at least -1e-9");
    ok &= check(dt < kBudgetPerCase, "case runtime under 5 min");
  }
  return ok;
}

// ---------------------------------------------------------------------------
// 3. No-solution evidence for the absorbed stationarity systems.

bool criterion3() {
  const double kResidualFloor = 1e-3;
  const double kBudgetSeconds = 600.0;
  const long long kStarts = 10000;
  const auto t0 = std::chrono::steady_clock::now();

  bool ok = true;
  for (const Weight& w : {lsiforge::phi4(), lsiforge::phi6()}) {
    const lsiforge::SpectralForm form = lsiforge::build_form(w);
    lsiforge::SearchStats stats;
    const auto solutions =
        lsiforge::kkt_search(form, kStarts, kSeed, 0, &stats);
    std::printf("    %-5s accepted %lld, min residual %.3e\n",
                w.label.c_str(), stats.accepted,
                stats.min_terminal_residual);
    ok &= check(solutions.empty(), "no feasible stationary point found");
    ok &= check(stats.accepted == 0, "zero accepted states");
    ok &= check(stats.min_terminal_residual >= kResidualFloor,
                "terminal residuals at least 1e-3");
  }
  const double dt = seconds_since(t0);
  std::printf("    elapsed %.1f s\n", dt);
  return ok && check(dt < kBudgetSeconds, "runtime under 10 min");
}

// ---------------------------------------------------------------------------
// 4. Derivative cascades on (1, 50]: value table, relations, positivity.

bool criterion4() {
  const double kBudgetSeconds = 60.0;
  const long long kGridPoints = 100000;
  const double kXMax = 50.0;
  const auto t0 = std::chrono::steady_clock::now();

  bool ok = true;
  const lsiforge::CascadeReport z6 =
      lsiforge::cascade_chain_z6(kXMax, kGridPoints);
  const lsiforge::CascadeReport z4 =
      lsiforge::cascade_chain_z4(kXMax, kGridPoints);

  for (const auto* rep : {&z6, &z4}) {
    ok &= check(rep->values_at_one_ok,
                "value table at 1 (zeros < 1e-8, positives > 1e-10)");
    ok &= check(rep->relations_ok, "chain relations within 1e-5 relative");
    for (const auto& [name, positive] : rep->sign_verdicts) {
      ok &= check(positive, (rep->case_id + " positivity of " + name).c_str());
    }
    ok &= check(rep->monotone_chain_ok, "backward positivity chain closes");
  }
  bool found_h8_closed_form = false;
  for (const auto& rc : z6.relation_checks) {
    if (rc.name.find("3456") != std::string::npos) {
      found_h8_closed_form = true;
      ok &= check(rc.ok, "h8'' closed form within 1e-10");
    }
  }
  ok &= check(found_h8_closed_form, "h8'' closed-form check present");
  std::printf("    Z6: %zu grid points, all defined\n", z6.grid.size());
  std::printf(
      "    Z4 branch counts: h-positivity branch %zu points, "
      "infeasible-equation branch %zu points\n",
      z4.h_defined_points, z4.grid.size() - z4.h_defined_points);
  ok &= check(z4.h_defined_points > 0 &&
                  z4.h_defined_points < z4.grid.size(),
              "Z4 grid splits into the two certificate branches");

  const double dt = seconds_since(t0);
  std::printf("    elapsed %.1f s\n", dt);
  return ok && check(dt < kBudgetSeconds, "runtime under 1 min");
}

// ---------------------------------------------------------------------------
// 5. Doubling pairs: clauses + quadratic scans certify the listed pairs,
//    the analytic minimum matches the grid, corners are exact, and the
//    word-length pair fails with a reproducible witness.

bool criterion5() {
  const double kBudgetSeconds = 120.0;
  const int kResolution = 201;
  const double kAnalytic = 1e-8;
  const double kCorner = 1e-12;
  const auto t0 = std::chrono::steady_clock::now();

  bool ok = true;
  std::vector<std::pair<Weight, Weight>> pairs = {
      {lsiforge::phi6(), lsiforge::gamma_even_tower(12)},
      {lsiforge::phi4(), lsiforge::gamma_even_tower(8)},
  };
  for (int n : {6, 8, 12, 16, 24, 32, 48, 64, 96, 128}) {
    pairs.emplace_back(lsiforge::gamma_even_tower(n),
                       lsiforge::gamma_even_tower(2 * n));
  }
  for (const auto& [base, doubled] : pairs) {
    const lsiforge::PairReport pr =
        lsiforge::check_pair_condition(base, doubled);
    const lsiforge::QuadraticScan scan =
        lsiforge::scan_quadratic(base, doubled, kResolution);
    const std::string tag = base.label + ":" + doubled.label;
    ok &= check(pr.all(), (tag + " passes the five clauses").c_str());
    ok &= check(scan.verdict, (tag + " passes the quadratic scan").c_str());
    if (scan.analytic_checked) {
      ok &= check(scan.analytic_max_diff <= kAnalytic,
                  (tag + " analytic minimum matches grid to 1e-8").c_str());
    }
  }
  std::printf("    %zu pairs certified at resolution %d\n", pairs.size(),
              kResolution);

  ok &= check(std::abs(lsiforge::corner_function_h(0.0, 0.0)) <= kCorner,
              "corner h(0,0) = 0");
  ok &= check(std::abs(lsiforge::corner_function_h(1.0, 1.0) + 56.0) <=
                  kCorner,
              "corner h(1,1) = -56");
  const double corner01 = 5.0 * (37.0 - 30.0 * std::sqrt(2.0));
  ok &= check(std::abs(lsiforge::corner_function_h(0.0, 1.0) - corner01) <=
                  kCorner,
              "corner h(0,1) = 5(37 - 30 sqrt 2)");
  ok &= check(std::abs(lsiforge::corner_function_h(1.0, 0.0) - corner01) <=
                  kCorner,
              "corner h(1,0) = 5(37 - 30 sqrt 2)");

  // the plain word-length pair must fail, reproducibly
  const Weight psi4 = lsiforge::word_length(4);
  const Weight psi8 = lsiforge::word_length(8);
  const lsiforge::QuadraticScan fail_scan =
      lsiforge::scan_quadratic(psi4, psi8, kResolution);
  ok &= check(!fail_scan.verdict, "psi4:psi8 fails the quadratic scan");
  const double expect_min = 4.0 * std::sqrt(2.0) - 6.0;
  const double expect_x = 2.0 - std::sqrt(2.0) / 2.0;
  std::printf("    psi4:psi8 witness: value %.9f at x = %.9f (r_a=%g, r_b=%g)\n",
              fail_scan.min_value, fail_scan.min_location[0],
              fail_scan.min_location[1], fail_scan.min_location[2]);
  ok &= check(std::abs(fail_scan.min_value - expect_min) <= 1e-9,
              "witness value equals 4 sqrt(2) - 6");
  ok &= check(std::abs(fail_scan.min_location[0] - expect_x) <= 1e-9,
              "witness location equals 2 - sqrt(2)/2");

  const double dt = seconds_since(t0);
  std::printf("    elapsed %.1f s\n", dt);
  return ok && check(dt < kBudgetSeconds, "runtime under 2 min");
}

// ---------------------------------------------------------------------------
// 6. Monte-Carlo doubling chain with 1e5 samples per certified pair.

bool criterion6() {
  const double kFloor = -1e-9;
  const double kBudgetPerPair = 300.0;
  const long long kSamples = 100000;

  bool ok = true;
  const std::vector<std::pair<Weight, Weight>> pairs = {
      {lsiforge::phi6(), lsiforge::gamma_even_tower(12)},
      {lsiforge::phi4(), lsiforge::gamma_even_tower(8)},
  };
  for (const auto& [base, doubled] : pairs) {
    const auto t0 = std::chrono::steady_clock::now();
    const lsiforge::InductionReport rep =
        lsiforge::induction_step(base, doubled, kSamples, kSeed);
    const double dt = seconds_since(t0);
    std::printf(
        "    %s:%s entropy slack % .3e, dirichlet slack % .3e  (%.1f s)\n",
        base.label.c_str(), doubled.label.c_str(), rep.min_slack_entropy,
        rep.min_slack_dirichlet, dt);
    ok &= check(rep.min_slack_entropy >= kFloor,
                "entropy-side slack at least -1e-9");
    ok &= check(rep.min_slack_dirichlet >= kFloor,
                "dirichlet-side slack at least -1e-9");
    ok &= check(rep.ok, "chain verdict");
    ok &= check(dt < kBudgetPerPair, "pair runtime under 5 min");
  }
  return ok;
}

// ---------------------------------------------------------------------------
// 7. Hypercontractive times: bisection matches (1/2) log((q-1)/(p-1))
//    within 1e-2 on the listed cases; three-cycle closed form within 2e-2.

bool criterion7() {
  const double kBudgetSeconds = 900.0;
  const double kTimeTol = 1e-2;
  const auto t0 = std::chrono::steady_clock::now();

  struct Case {
    int n;
    double p, q;
  };
  const Case cases[] = {
      {4, 2, 4}, {6, 2, 4}, {8, 2, 4}, {4, 2, 6}, {6, 3, 5}};
  bool ok = true;
  for (const Case& c : cases) {
    const lsiforge::HypTimeEstimate est =
        lsiforge::estimate_optimal_time(lsiforge::word_length(c.n), c.p, c.q);
    const double predicted = 0.5 * std::log((c.q - 1.0) / (c.p - 1.0));
    std::printf("    (n=%d, p=%g, q=%g): t* = %.6f, predicted %.6f\n", c.n,
                c.p, c.q, est.t_star, predicted);
    ok &= check(!est.uncertain, "bisection bracketed a contractive time");
    ok &= check(std::abs(est.t_star - predicted) <= kTimeTol,
                "estimate within 1e-2 of the predicted time");
  }
  const lsiforge::HypTimeEstimate z3 =
      lsiforge::estimate_optimal_time(lsiforge::word_length(3), 2.0, 4.0);
  const double formula = lsiforge::z3_time_formula(4.0);
  std::printf("    three-cycle: numeric %.6f vs closed form %.6f\n",
              z3.t_star, formula);
  ok &= check(std::abs(z3.t_star - formula) <= 2e-2,
              "three-cycle estimate within 2e-2 of the closed form");

  const double dt = seconds_since(t0);
  std::printf("    elapsed %.1f s\n", dt);
  return ok && check(dt < kBudgetSeconds, "runtime under 15 min");
}

// ---------------------------------------------------------------------------
// 8. Library against independent oracles.

bool criterion8() {
  bool ok = true;
  std::mt19937_64 rng = lsiforge::chunk_rng(kSeed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // transform vs textbook double loop
  {
    double worst = 0.0;
    for (int n = 1; n <= 32; ++n) {
      for (int rep = 0; rep < 5; ++rep) {
        Eigen::VectorXcd x(n);
        for (int j = 0; j < n; ++j) {
          x(j) = std::complex<double>(gauss(rng), gauss(rng));
        }
        worst = std::max(worst, (lsiforge::dft_forward(x) -
                                 oracle::naive_dft(x))
                                    .cwiseAbs()
                                    .maxCoeff());
      }
    }
    std::printf("    transform vs naive double loop: worst %.3e\n", worst);
    ok &= check(worst <= 1e-12, "transform within 1e-12 of the naive loop");
  }

  // entropy splitting vs direct doubled entropy
  {
    double worst = 0.0;
    for (int n = 2; n <= 16; ++n) {
      for (int rep = 0; rep < 20; ++rep) {
        Eigen::VectorXd a = lsiforge::random_positive_sphere(rng, n);
        Eigen::VectorXd b = lsiforge::random_positive_sphere(rng, n);
        if (rep % 3 == 1) a *= 2.5;
        const double direct = lsiforge::entropy(lsiforge::interleave(a, b));
        worst = std::max(
            worst, std::abs(lsiforge::entropy_split(a, b).sum() - direct));
      }
    }
    std::printf("    entropy split vs direct: worst %.3e\n", worst);
    ok &= check(worst <= 1e-12, "entropy split within 1e-12 of direct");
  }

  // Dirichlet forms: frequency-side oracle and the interleaving identity
  {
    double worst_plain = 0.0;
    double worst_split = 0.0;
    const std::vector<Weight> weights = {
        lsiforge::word_length(6), lsiforge::word_length(8), lsiforge::phi4(),
        lsiforge::phi6(), lsiforge::gamma_even_tower(12)};
    for (const Weight& w : weights) {
      const lsiforge::SpectralForm form = lsiforge::build_form(w);
      for (int rep = 0; rep < 20; ++rep) {
        const Eigen::VectorXd lam =
            lsiforge::random_positive_sphere(rng, w.n);
        const double direct = lsiforge::dirichlet(form, lam);
        worst_plain = std::max(
            worst_plain,
            std::abs(direct -
                     oracle::fourier_dirichlet(w.as_doubles(), lam)));
        if (w.n % 2 == 0) {
          worst_split = std::max(
              worst_split, std::abs(2.0 * direct -
                                    lsiforge::dirichlet_frequency_side(
                                        w, lam)));
        }
      }
    }
    std::printf(
        "    dirichlet vs frequency side: plain %.3e, interleaved %.3e\n",
        worst_plain, worst_split);
    ok &= check(worst_plain <= 1e-10,
                "frequency-side form within 1e-10 of direct");
    ok &= check(worst_split <= 1e-10,
                "interleaving identity within 1e-10 of direct");
  }

  // objective gradient vs central differences
  {
    double worst_rel = 0.0;
    for (const Weight& w :
         {lsiforge::phi4(), lsiforge::phi6(), lsiforge::word_length(8)}) {
      const lsiforge::SpectralForm form = lsiforge::build_form(w);
      for (int rep = 0; rep < 10; ++rep) {
        Eigen::VectorXd lam = lsiforge::random_positive_sphere(rng, w.n);
        lam.array() += 0.2;  // keep away from the boundary of the log terms
        lam /= lam.norm();
        const Eigen::VectorXd grad = lsiforge::lsi_gradient(form, lam);
        const Eigen::VectorXd fd = oracle::fd_gradient(
            [&](const Eigen::VectorXd& v) {
              return lsiforge::lsi_objective(form, v);
            },
            lam, 1e-6);
        worst_rel = std::max(worst_rel, (grad - fd).norm() /
                                            std::max(1.0, grad.norm()));
      }
    }
    std::printf("    gradient vs central differences: worst rel %.3e\n",
                worst_rel);
    ok &= check(worst_rel <= 1e-5,
                "gradient within 1e-5 relative of central differences");
  }
  return ok;
}

struct Criterion {
  int id;
  const char* title;
  bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "exact spectral matrices", criterion1},
    {2, "sphere nonnegativity certificates", criterion2},
    {3, "stationarity no-solution evidence", criterion3},
    {4, "derivative cascades", criterion4},
    {5, "doubling pairs and witness", criterion5},
    {6, "Monte-Carlo doubling chain", criterion6},
    {7, "hypercontractive times", criterion7},
    {8, "independent oracles", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long id = std::strtol(argv[i], &end, 10);
    if (end == argv[i] || *end != '\0' || id < 1 || id > 8) {
      std::fprintf(stderr, "usage: %s [criterion-number (1..8) ...]\n",
                   argv[0]);
      return 2;
    }
    selected.insert(static_cast<int>(id));
  }

  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (!selected.empty() && selected.count(c.id) == 0) continue;
    std::printf("criterion %d: %s\n", c.id, c.title);
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = c.fn();
    std::printf("[%s] criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL",
                c.id, c.title, seconds_since(t0));
    all_ok &= ok;
  }
  return all_ok ? 0 : 1;
}
