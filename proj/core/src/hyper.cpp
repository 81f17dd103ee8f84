// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0

#include "lsiforge/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lsiforge/dft.hpp"
#include "lsiforge/parallel.hpp"
#include "lsiforge/rng.hpp"

namespace lsiforge {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Euclidean-gradient of the map f -> ||f||_p at f, given norm = ||f||_p:
/// entry j is (1/n) |f_j|^(p-1) sgn(f_j) norm^(1-p).  Requires norm > 0.
Eigen::VectorXd norm_gradient(const Eigen::VectorXd& f, double p,
                              double norm) {
  const auto n = f.size();
  Eigen::VectorXd grad(n);
  const double scale = std::pow(norm, 1.0 - p) / static_cast<double>(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(f(j));
    const double s = (f(j) > 0.0) ? 1.0 : ((f(j) < 0.0) ? -1.0 : 0.0);
    grad(j) = scale * std::pow(a, p - 1.0) * s;
  }
  return grad;
}

/// One projected-gradient ascent run maximizing ||P_t f||_q over the set
/// { ||f||_p = 1 } (intersected with f >= 0 unless signed_f).  The
/// objective is scale-invariant, so the p-sphere constraint is maintained
/// by renormalizing after every step.  Returns the best objective value
/// reached.
double ascend(const SemigroupOperator& op, Eigen::VectorXd f, double p,
              double q, bool signed_f) {
  const int n = op.n;
  if (!signed_f) f = f.cwiseMax(0.0);
  double nf = lp_norm(f, p);
  if (!(nf > 0.0) || !std::isfinite(nf)) {
    f = Eigen::VectorXd::Ones(n);
    nf = 1.0;
  }
  f /= nf;
  double best = lp_norm(apply_semigroup(op, f), q);
  double eta = 0.25;
  for (int iter = 0; iter < 400 && eta > 1e-13; ++iter) {
    const Eigen::VectorXd g = apply_semigroup(op, f);
    const double ng = lp_norm(g, q);
    if (!(ng > 0.0)) break;
    // P_t is symmetric, so the chain rule pulls the q-norm gradient back
    // through another application of P_t; subtracting ng times the p-norm
    // gradient gives the ascent direction of the ratio on the sphere.
    const Eigen::VectorXd u = apply_semigroup(op, norm_gradient(g, q, ng));
    const Eigen::VectorXd v = norm_gradient(f, p, 1.0);
    const Eigen::VectorXd grad = u - ng * v;
    Eigen::VectorXd trial = f + eta * grad;
    if (!signed_f) trial = trial.cwiseMax(0.0);
    const double tn = lp_norm(trial, p);
    if (tn > 0.0 && std::isfinite(tn)) {
      trial /= tn;
      const double r = lp_norm(apply_semigroup(op, trial), q);
      if (r > best) {
        f = std::move(trial);
        best = r;
        eta *= 1.3;
        continue;
      }
    }
    eta *= 0.5;
  }
  return best;
}

/// Deterministic start for multi-start index s.  Mixes perturbations of
/// the constant (the near-critical regime), random positive vectors,
/// sparse corners, two-level profiles, spikes, and log-normal noise.
Eigen::VectorXd make_start(int n, long long s, std::uint64_t seed,
                           bool signed_f) {
  std::mt19937_64 rng = chunk_rng(seed, static_cast<std::uint64_t>(s));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd f(n);
  switch (s % 8) {
    case 0: {
      // Constant plus first harmonic; log-uniform amplitude covers the
      // vanishing-perturbation limit where near-critical extremizers live.
      const double amp = 0.005 * std::exp(std::log(100.0) * unit(rng));
      for (int j = 0; j < n; ++j) {
        f(j) = 1.0 + amp * std::cos(2.0 * kPi * j / n);
      }
      break;
    }
    case 1: {
      const int m = 1 + static_cast<int>(unit(rng) * std::max(1, n / 2));
      const double amp = 0.005 * std::exp(std::log(100.0) * unit(rng));
      const double phase = 2.0 * kPi * unit(rng);
      for (int j = 0; j < n; ++j) {
        f(j) = 1.0 + amp * std::cos(2.0 * kPi * m * j / n + phase);
      }
      break;
    }
    case 2:
      f = random_positive_sphere(rng, n);
      break;
    case 3: {
      const int support = 1 + static_cast<int>(unit(rng) * n) % n;
      f = random_positive_corner(rng, n, support);
      break;
    }
    case 4: {
      // Two-level profile: high on a random subset, low elsewhere.
      const double high = 1.0 + 0.01 * std::exp(std::log(300.0) * unit(rng));
      for (int j = 0; j < n; ++j) {
        f(j) = (unit(rng) < 0.5) ? high : 1.0;
      }
      break;
    }
    case 5: {
      const double floor_level = 0.5 * unit(rng);
      f = Eigen::VectorXd::Constant(n, floor_level);
      f(static_cast<int>(unit(rng) * n) % n) += 1.0;
      break;
    }
    case 6:
      for (int j = 0; j < n; ++j) f(j) = std::exp(0.5 * gauss(rng));
      break;
    default:
      for (int j = 0; j < n; ++j) f(j) = 1.0 + 0.05 * gauss(rng);
      break;
  }
  if (signed_f && s % 4 == 3) {
    // Explore sign changes: recentre around zero.
    f.array() -= f.mean();
    if (f.cwiseAbs().maxCoeff() == 0.0) f(0) = 1.0;
  }
  return f;
}

}  // namespace

SemigroupOperator make_semigroup(const Weight& weight, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("make_semigroup: time must be nonnegative");
  }
  SemigroupOperator op;
  op.n = weight.n;
  op.weight = weight;
  op.t = t;
  op.action.resize(weight.n);
  const std::vector<double> gamma = weight.as_doubles();
  for (int k = 0; k < weight.n; ++k) {
    op.action(k) = std::exp(-t * gamma[static_cast<std::size_t>(k)]);
  }
  return op;
}

Eigen::VectorXd apply_semigroup(const SemigroupOperator& op,
                                const Eigen::VectorXd& f) {
  if (f.size() != op.n) {
    throw std::invalid_argument(
        "apply_semigroup: input length does not match the operator size");
  }
  const Eigen::VectorXcd f_hat = dft_forward(f);
  const Eigen::VectorXcd damped =
      f_hat.cwiseProduct(op.action.cast<std::complex<double>>());
  return dft_inverse(damped).real();
}

double lp_norm(const Eigen::VectorXd& f, double p) {
  if (f.size() == 0) {
    throw std::invalid_argument("lp_norm: empty input");
  }
  if (!(p >= 1.0)) {
    throw std::invalid_argument("lp_norm: exponent must be at least 1");
  }
  double acc = 0.0;
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    acc += std::pow(std::abs(f(j)), p);
  }
  return std::pow(acc / static_cast<double>(f.size()), 1.0 / p);
}

double max_ratio(const Weight& weight, double t, double p, double q,
                 long long starts, std::uint64_t seed, int threads,
                 bool signed_f) {
  if (!(p > 1.0) || !(q >= p)) {
    throw std::invalid_argument(
        "max_ratio: exponents must satisfy 1 < p <= q");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("max_ratio: time must be nonnegative");
  }
  if (starts < 1) {
    throw std::invalid_argument("max_ratio: needs at least one start");
  }
  const SemigroupOperator op = make_semigroup(weight, t);
  const int n = op.n;
  std::vector<double> results(static_cast<std::size_t>(starts), 0.0);
  parallel_chunks(
      static_cast<std::size_t>(starts), resolve_thread_count(threads),
      [&](std::size_t s) {
        const Eigen::VectorXd f0 =
            make_start(n, static_cast<long long>(s), seed, signed_f);
        results[s] = ascend(op, f0, p, q, signed_f);
      });
  // The constant profile is a guaranteed candidate: its ratio is exactly
  // exp(-t * gamma(0)), which is 1 for every weight vanishing at zero.
  double best =
      lp_norm(apply_semigroup(op, Eigen::VectorXd::Ones(n)), q);
  for (const double r : results) best = std::max(best, r);
  return best;
}

HypTimeEstimate estimate_optimal_time(const Weight& weight, double p, double q,
                                      long long starts, std::uint64_t seed,
                                      int threads, const Tolerances& tol) {
  if (!(p > 1.0) || !(q >= p)) {
    throw std::invalid_argument(
        "estimate_optimal_time: exponents must satisfy 1 < p <= q");
  }
  HypTimeEstimate est;
  est.n = weight.n;
  est.p = p;
  est.q = q;
  est.lower_bound = 0.5 * std::log((q - 1.0) / (p - 1.0));
  if (p == q) {
    est.t_star = 0.0;
    est.bracket = {0.0, 0.0};
    return est;
  }
  const double threshold = 1.0 + tol.contractive_threshold;
  const auto contractive = [&](double t) {
    const double r = max_ratio(weight, t, p, q, starts, seed, threads);
    est.max_ratio_at_t.emplace_back(t, r);
    return r <= threshold;
  };
  // Escalate the upper end until the operator is contractive there; the
  // universal lower bound is the natural first guess and is exact for the
  // dyadic towers.
  double lo = 0.0;
  double hi = std::max(est.lower_bound, 0.05);
  while (!contractive(hi)) {
    lo = hi;
    hi *= 1.4;
    if (hi > 50.0) {
      est.uncertain = true;
      break;
    }
  }
  if (!est.uncertain) {
    while (hi - lo > tol.bracket_width) {
      const double mid = 0.5 * (lo + hi);
      if (contractive(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  est.bracket = {lo, hi};
  est.t_star = 0.5 * (lo + hi);
  return est;
}

double z3_time_formula(double q) {
  if (!(q > 2.0)) {
    throw std::invalid_argument("z3_time_formula: requires q > 2");
  }
  const double e = 2.0 / q;
  const double a = 2.0 / 3.0;
  const double b = 1.0 / 3.0;
  const double num = a * std::pow(b, e - 1.0) - b * std::pow(a, e - 1.0);
  const double den = std::pow(a, e) - std::pow(b, e);
  return 0.5 * std::log(num / den);
}

double gross_time_from_lsi(double C, double p, double q) {
  if (!(C > 0.0)) {
    throw std::invalid_argument(
        "gross_time_from_lsi: constant must be positive");
  }
  if (!(p > 1.0) || !(q >= p)) {
    throw std::invalid_argument(
        "gross_time_from_lsi: exponents must satisfy 1 < p <= q");
  }
  return 0.25 * C * std::log((q - 1.0) / (p - 1.0));
}

double min_kernel_entry(const SemigroupOperator& op) {
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(op.n);
  delta(0) = 1.0;
  return apply_semigroup(op, delta).minCoeff();
}

void write_hyp_csv(const std::vector<HypTimeEstimate>& estimates,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_hyp_csv: cannot open " + path);
  }
  out << "n,p,q,t_lo,t_hi,t_star,lower_bound\n";
  out << std::setprecision(17);
  for (const HypTimeEstimate& est : estimates) {
    out << est.n << ',' << est.p << ',' << est.q << ',' << est.bracket.first
        << ',' << est.bracket.second << ',' << est.t_star << ','
        << est.lower_bound << '\n';
  }
}

}  // namespace lsiforge
