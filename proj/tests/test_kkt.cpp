// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lsiforge/kkt.hpp"
#include "lsiforge/rng.hpp"
#include "lsiforge/spectral.hpp"
#include "lsiforge/weight.hpp"

using namespace lsiforge;

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Eigen::VectorXd random_pos(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) v[j] = scale * std::abs(normal(rng));
  return v;
}

}  // namespace

TEST_CASE("stationarity residual matches the explicit 6-cycle coefficients") {
  // Written out per coordinate, the system for the 6-point modified weight is
  //   (7/9) l_j - (2/9)(l_{j-2}+l_{j-1}+l_{j+1}+l_{j+2}) + (1/9) l_{j+3}
  //     - (2/3) l_j log l_j - nu_j.
  SpectralForm form = build_form(phi6());
  std::mt19937_64 rng(321);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::VectorXd lam = random_pos(rng, 6, 1.0);
    Eigen::VectorXd nu = random_pos(rng, 6, 0.5);
    KKTState st = kkt_residual(form, lam, nu);
    for (int j = 0; j < 6; ++j) {
      const double expect = (7.0 / 9.0) * lam[j] -
                            (2.0 / 9.0) * (lam[(j + 1) % 6] + lam[(j + 5) % 6] +
                                           lam[(j + 2) % 6] + lam[(j + 4) % 6]) +
                            (1.0 / 9.0) * lam[(j + 3) % 6] -
                            (2.0 / 3.0) * xlogx(lam[j]) - nu[j];
      CHECK(st.residual_stationarity[j] == doctest::Approx(expect).epsilon(1e-13));
      CHECK(st.residual_complementarity[j] ==
            doctest::Approx(lam[j] * nu[j]).epsilon(1e-14));
    }
    CHECK(st.norm_constraint_value == doctest::Approx(lam.squaredNorm()));
  }
}

TEST_CASE("stationarity residual matches the explicit 4-cycle coefficients") {
  // Coefficients 9/10 (diagonal), 2/5 (adjacent), 1/10 (antipodal).
  SpectralForm form = build_form(phi4());
  std::mt19937_64 rng(654);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::VectorXd lam = random_pos(rng, 4, 1.0);
    Eigen::VectorXd nu = random_pos(rng, 4, 0.5);
    KKTState st = kkt_residual(form, lam, nu);
    for (int j = 0; j < 4; ++j) {
      const double expect = (9.0 / 10.0) * lam[j] -
                            (2.0 / 5.0) * (lam[(j + 1) % 4] + lam[(j + 3) % 4]) -
                            (1.0 / 10.0) * lam[(j + 2) % 4] - xlogx(lam[j]) -
                            nu[j];
      CHECK(st.residual_stationarity[j] == doctest::Approx(expect).epsilon(1e-13));
    }
  }
}

TEST_CASE("constant half vector on the 6-cycle leaves only the entropy term") {
  SpectralForm form = build_form(phi6());
  Eigen::VectorXd lam = Eigen::VectorXd::Constant(6, 0.5);
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(6);
  KKTState st = kkt_residual(form, lam, nu);
  const double expect = -(2.0 / 3.0) * 0.5 * std::log(0.5);  // = (1/3) log 2
  for (int j = 0; j < 6; ++j) {
    CHECK(st.residual_stationarity[j] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(st.residual_stationarity[j] > 0.0);
  }
  CHECK(expect == doctest::Approx(0.23105).epsilon(1e-4));
  CHECK(st.feasible);  // |lam|^2 = 1.5 lies in (0, 6), all signs fine
}

TEST_CASE("zero vector has zero stationarity residual but violates the norm window") {
  SpectralForm form = build_form(phi6());
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(6);
  KKTState st = kkt_residual(form, zero, zero);
  CHECK(st.residual_stationarity.cwiseAbs().maxCoeff() == 0.0);
  CHECK(st.norm_constraint_value == 0.0);
  CHECK_FALSE(st.feasible);
}

TEST_CASE("feasibility flag tracks signs, the norm window, and complementarity") {
  SpectralForm form = build_form(phi6());
  Eigen::VectorXd lam = Eigen::VectorXd::Constant(6, 0.5);
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(6);

  Eigen::VectorXd neg = lam;
  neg[2] = -0.1;
  CHECK_FALSE(kkt_residual(form, neg, nu).feasible);

  CHECK_FALSE(kkt_residual(form, Eigen::VectorXd::Constant(6, 2.0), nu).feasible);

  Eigen::VectorXd bad_nu = nu;
  bad_nu[0] = 0.3;  // lambda_0 * nu_0 = 0.15, far from complementary
  CHECK_FALSE(kkt_residual(form, lam, bad_nu).feasible);

  Eigen::VectorXd neg_nu = nu;
  neg_nu[1] = -1e-12;
  CHECK_FALSE(kkt_residual(form, lam, neg_nu).feasible);
}

TEST_CASE("kkt_residual rejects mismatched dimensions") {
  SpectralForm form = build_form(phi6());
  CHECK_THROWS_AS(kkt_residual(form, Eigen::VectorXd::Zero(5),
                               Eigen::VectorXd::Zero(6)),
                  std::invalid_argument);
  CHECK_THROWS_AS(kkt_residual(form, Eigen::VectorXd::Zero(6),
                               Eigen::VectorXd::Zero(4)),
                  std::invalid_argument);
}

TEST_CASE("multi-start search finds no solutions for the modified weights") {
  for (const Weight& w : {phi6(), phi4(), word_length(2)}) {
    CAPTURE(w.label);
    SpectralForm form = build_form(w);
    SearchStats stats;
    std::vector<KKTState> sols = kkt_search(form, 400, 20260823, 0, &stats);
    CHECK(sols.empty());
    CHECK(stats.starts == 400);
    CHECK(stats.accepted == 0);
    CHECK(stats.min_terminal_residual >= 1e-3);
    long long total = 0;
    for (long long c : stats.histogram) total += c;
    CHECK(total == 400);
    // Every bin at or below the 1e-3 edge must be empty.
    REQUIRE(stats.bin_edges.size() + 1 == stats.histogram.size());
    for (std::size_t b = 0; b < stats.bin_edges.size(); ++b) {
      if (stats.bin_edges[b] <= 1e-3) CHECK(stats.histogram[b] == 0);
    }
  }
}

TEST_CASE("multi-start search does find solutions for a weakened weight") {
  SpectralForm form = build_form(scale_weight(word_length(6), Rational(3, 10)));
  SearchStats stats;
  std::vector<KKTState> sols = kkt_search(form, 400, 99, 0, &stats);
  REQUIRE_FALSE(sols.empty());
  CHECK(stats.accepted > 0);
  CHECK(stats.min_terminal_residual < 1e-10);
  for (const KKTState& st : sols) {
    CHECK(st.feasible);
    CHECK(st.residual_norm() <= 1e-9);
    CHECK(st.norm_constraint_value > 0.0);
    CHECK(st.norm_constraint_value < 6.0);
    // Independent recomputation of the residual at the reported point.
    KKTState again = kkt_residual(form, st.lambda, st.nu);
    CHECK(again.residual_norm() == doctest::Approx(st.residual_norm()).epsilon(1e-12));
  }
  // Distinct solutions really differ by more than the dedup radius.
  for (std::size_t a = 0; a < sols.size(); ++a) {
    for (std::size_t b = a + 1; b < sols.size(); ++b) {
      CHECK((sols[a].lambda - sols[b].lambda).cwiseAbs().maxCoeff() > 1e-6);
    }
  }
}

TEST_CASE("search is deterministic and independent of the thread count") {
  SpectralForm form = build_form(scale_weight(word_length(6), Rational(3, 10)));
  SearchStats s1, s2;
  std::vector<KKTState> a = kkt_search(form, 150, 7, 1, &s1);
  std::vector<KKTState> b = kkt_search(form, 150, 7, 2, &s2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].lambda - b[i].lambda).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a[i].nu - b[i].nu).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(s1.min_terminal_residual == s2.min_terminal_residual);
  CHECK(s1.histogram == s2.histogram);
}

TEST_CASE("sphere minimization certifies nonnegativity for the 6-cycle weight") {
  SpectralForm form = build_form(phi6());
  SphereMinimum min = minimize_on_sphere(form, 200, 4242);
  CHECK(min.value >= -1e-9);
  CHECK(min.value <= 1e-6);
  Eigen::VectorXd constant = Eigen::VectorXd::Constant(6, 1.0 / std::sqrt(6.0));
  CHECK((min.lambda - constant).cwiseAbs().maxCoeff() <= 1e-4);
}

TEST_CASE("sphere minimization returns the exact flat minimizer on two points") {
  SpectralForm form = build_form(word_length(2));
  SphereMinimum min = minimize_on_sphere(form, 50, 11);
  CHECK(std::abs(min.value) <= 1e-12);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(min.lambda[0] - inv_sqrt2) <= 1e-9);
  CHECK(std::abs(min.lambda[1] - inv_sqrt2) <= 1e-9);
}

TEST_CASE("sphere minimization stays nonnegative for the 12-point word length") {
  SpectralForm form = build_form(word_length(12));
  SphereMinimum min = minimize_on_sphere(form, 100, 3030);
  CHECK(min.value >= -1e-9);
}

TEST_CASE("sphere minimization detects the negative dip of a weakened weight") {
  SpectralForm form = build_form(scale_weight(word_length(6), Rational(3, 10)));
  SphereMinimum min = minimize_on_sphere(form, 200, 5151);
  CHECK(min.value == doctest::Approx(-0.1571503964).epsilon(1e-6));
  CHECK(min.lambda.minCoeff() > 0.0);  // the dip sits strictly inside
}

TEST_CASE("absorption with the fixed-point multiplier reproduces the input residual") {
  // mu = -(log n)/n gives rescaling constant exactly 1, so the absorbed
  // system evaluates to the sphere system verbatim.
  SpectralForm form = build_form(phi6());
  const int n = 6;
  const double mu = -std::log(double(n)) / n;
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd lam = random_positive_sphere(rng, n);
    Eigen::VectorXd nu = random_pos(rng, n, 0.2);
    const double absorbed = mu_absorption_check(form, lam, mu, nu);
    Eigen::VectorXd sphere = sphere_system_residual(form, lam, mu, nu);
    const double direct = std::sqrt(sphere.squaredNorm() +
                                    lam.cwiseProduct(nu).squaredNorm());
    CHECK(absorbed == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("absorption rescales the sphere residual by the predicted constants") {
  // Stationarity scales by c = exp((n mu + log n)/2), complementarity by c^2;
  // checking at mu and at 2 mu also covers the exponent-doubling relation.
  SpectralForm form = build_form(phi4());
  const int n = 4;
  std::mt19937_64 rng(9);
  for (double mu : {-0.4, -0.11, 0.07}) {
    for (int rep = 0; rep < 10; ++rep) {
      Eigen::VectorXd lam = random_positive_sphere(rng, n);
      Eigen::VectorXd nu = random_pos(rng, n, 0.3);
      for (double m : {mu, 2 * mu}) {
        const double c = std::exp(0.5 * (n * m + std::log(double(n))));
        Eigen::VectorXd sphere = sphere_system_residual(form, lam, m, nu);
        const double predicted =
            std::sqrt(c * c * sphere.squaredNorm() +
                      std::pow(c, 4) * lam.cwiseProduct(nu).squaredNorm());
        const double absorbed = mu_absorption_check(form, lam, m, nu);
        CHECK(absorbed == doctest::Approx(predicted).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("a polished stationary point of a weakened weight absorbs to ~0") {
  // Locate the negative minimum of the weakened weight on the sphere, then
  // solve the sphere-constrained stationarity system (nu = 0) by Newton in
  // (lambda, mu); the absorbed residual at the rescaled point must vanish.
  SpectralForm form = build_form(scale_weight(word_length(6), Rational(3, 10)));
  const int n = 6;
  SphereMinimum min = minimize_on_sphere(form, 200, 5151);
  Eigen::VectorXd lam = min.lambda;
  double mu = min.value;  // multiplier equals the value at a critical point

  const double logn = std::log(double(n));
  double final_residual = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd R =
        sphere_system_residual(form, lam, mu, Eigen::VectorXd::Zero(n));
    Eigen::VectorXd G(n + 1);
    G.head(n) = R;
    G[n] = lam.squaredNorm() - 1.0;
    final_residual = G.norm();
    if (final_residual < 1e-13) break;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) J(j, k) = 4.0 * form.matrix(j, k);
      J(j, j) -= (4.0 / n) * (1.0 + std::log(std::max(lam[j], 1e-300))) +
                 2.0 * mu + (2.0 / n) * logn;
      J(j, n) = -2.0 * lam[j];
      J(n, j) = 2.0 * lam[j];
    }
    Eigen::VectorXd d = J.fullPivLu().solve(-G);
    lam += d.head(n);
    mu += d[n];
  }
  REQUIRE(final_residual < 1e-12);
  CHECK(mu < 0.0);
  CHECK(mu == doctest::Approx(-0.1571503964).epsilon(1e-6));
  CHECK(mu_absorption_check(form, lam, mu, Eigen::VectorXd::Zero(n)) < 1e-9);
}

TEST_CASE("absorption check rejects off-sphere inputs") {
  SpectralForm form = build_form(phi6());
  Eigen::VectorXd lam = Eigen::VectorXd::Constant(6, 0.5);  // norm sqrt(1.5)
  CHECK_THROWS_AS(
      mu_absorption_check(form, lam, -0.1, Eigen::VectorXd::Zero(6)),
      std::invalid_argument);
}

TEST_CASE("pure sampling minimum: deterministic, thread-invariant, consistent") {
  SpectralForm form = build_form(phi4());
  const SphereMinimum a = sample_minimum(form, 20000, 5, 1);
  const SphereMinimum b = sample_minimum(form, 20000, 5, 3);
  CHECK(a.value == b.value);
  CHECK((a.lambda - b.lambda).cwiseAbs().maxCoeff() == 0.0);
  // the reported value is the objective at the reported point
  CHECK(a.value == doctest::Approx(lsi_objective(form, a.lambda)).epsilon(1e-15));
  CHECK(a.lambda.minCoeff() >= 0.0);
  CHECK(a.lambda.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // the sampled minimum can only go down with more samples
  const SphereMinimum small = sample_minimum(form, 5000, 5, 0);
  CHECK(a.value <= small.value + 1e-15);
  // nonnegative within slack for a weight whose objective is certified
  CHECK(a.value >= -1e-9);
  CHECK_THROWS_AS(sample_minimum(form, 0, 5), std::invalid_argument);
}
