// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0

#include "lsiforge/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lsiforge/parallel.hpp"
#include "lsiforge/rng.hpp"

namespace lsiforge {

namespace {

// x log x extended by continuity (and by 0 for negative inputs, which are
// outside the domain and flagged infeasible separately).
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Eigen::VectorXd xlogx_vec(const Eigen::VectorXd& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) out[j] = xlogx(v[j]);
  return out;
}

struct StartResult {
  double terminal_residual = std::numeric_limits<double>::infinity();
  bool accepted = false;
  Eigen::VectorXd lambda;
  Eigen::VectorXd nu;
};

// One damped least-squares descent on |residual|^2 from the given start.
// Iterates stay in the box lambda >= 0, nu >= 0 and inside the norm window
// [lo, hi] for |lambda|^2 (boundaries of the open constraint are kept at a
// relative margin; see Tolerances::norm_window_margin).
StartResult lm_descend(const SpectralForm& form, Eigen::VectorXd lam,
                       Eigen::VectorXd nu, double lo, double hi,
                       const Tolerances& tol) {
  const int n = form.n;
  const double quarter_n = 4.0 / n;
  const Eigen::MatrixXd& Q = form.matrix;
  constexpr int kMaxIters = 120;

  auto residual = [&](const Eigen::VectorXd& l, const Eigen::VectorXd& v) {
    Eigen::VectorXd r(2 * n);
    r.head(n) = 4.0 * (Q * l) - quarter_n * xlogx_vec(l) - v;
    r.tail(n) = l.cwiseProduct(v);
    return r;
  };

  Eigen::VectorXd F = residual(lam, nu);
  double damping = 1e-3;
  Eigen::MatrixXd J(2 * n, 2 * n);
  for (int it = 0; it < kMaxIters; ++it) {
    J.setZero();
    for (int j = 0; j < n; ++j) {
      const double lc = std::max(lam[j], tol.lambda_clamp);
      for (int k = 0; k < n; ++k) J(j, k) = 4.0 * Q(j, k);
      J(j, j) -= quarter_n * (1.0 + std::log(lc));
      J(j, n + j) = -1.0;
      J(n + j, j) = nu[j];
      J(n + j, n + j) = lam[j];
    }
    Eigen::MatrixXd A = J.transpose() * J;
    A.diagonal().array() += damping;
    Eigen::VectorXd step = A.ldlt().solve(-J.transpose() * F);
    if (!step.allFinite()) break;

    Eigen::VectorXd lam2 = (lam + step.head(n)).cwiseMax(0.0);
    Eigen::VectorXd nu2 = (nu + step.tail(n)).cwiseMax(0.0);
    double s2 = lam2.squaredNorm();
    if (s2 < lo) lam2 *= std::sqrt(lo / std::max(s2, 1e-30));
    if (s2 > hi) lam2 *= std::sqrt(hi / s2);
    Eigen::VectorXd F2 = residual(lam2, nu2);
    if (F2.squaredNorm() < F.squaredNorm()) {
      lam = std::move(lam2);
      nu = std::move(nu2);
      F = std::move(F2);
      damping = std::max(damping * 0.5, 1e-12);
      if (F.norm() < 1e-12) break;
    } else {
      damping = std::min(damping * 4.0, 1e8);
    }
  }

  StartResult out;
  out.terminal_residual = F.norm();
  const double s2 = lam.squaredNorm();
  out.accepted = out.terminal_residual <= tol.kkt_accept && s2 >= lo && s2 <= hi;
  out.lambda = std::move(lam);
  out.nu = std::move(nu);
  return out;
}

}  // namespace

double KKTState::residual_norm() const {
  return std::sqrt(residual_stationarity.squaredNorm() +
                   residual_complementarity.squaredNorm());
}

KKTState kkt_residual(const SpectralForm& form, const PointVector& lambda,
                      const Eigen::VectorXd& nu, const Tolerances& tol) {
  const int n = form.n;
  if (lambda.size() != n || nu.size() != n) {
    throw std::invalid_argument(
        "kkt_residual: lambda and nu must both have length n");
  }
  KKTState st;
  st.lambda = lambda;
  st.nu = nu;
  st.residual_stationarity =
      4.0 * (form.matrix * lambda) - (4.0 / n) * xlogx_vec(lambda) - nu;
  st.residual_complementarity = lambda.cwiseProduct(nu);
  st.norm_constraint_value = lambda.squaredNorm();
  bool feasible = st.norm_constraint_value > 0.0 &&
                  st.norm_constraint_value < static_cast<double>(n);
  for (int j = 0; j < n && feasible; ++j) {
    feasible = lambda[j] >= 0.0 && nu[j] >= 0.0 &&
               std::abs(st.residual_complementarity[j]) < tol.kkt_accept;
  }
  st.feasible = feasible;
  return st;
}

std::vector<KKTState> kkt_search(const SpectralForm& form, long long starts,
                                 std::uint64_t seed, int threads,
                                 SearchStats* stats, const Tolerances& tol) {
  if (starts < 1) throw std::invalid_argument("kkt_search: starts must be >= 1");
  const int n = form.n;
  const double lo = tol.norm_window_margin * n;
  const double hi = (1.0 - tol.norm_window_margin) * n;

  std::vector<StartResult> results(static_cast<std::size_t>(starts));
  parallel_chunks(static_cast<std::size_t>(starts),
                  resolve_thread_count(threads), [&](std::size_t s) {
    std::mt19937_64 rng = chunk_rng(seed, s);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Random radius in the norm window; direction |N(0,1)|, occasionally
    // sparsified so boundary-supported starts are also explored.
    const double r2 = lo + (hi - lo) * unif(rng);
    Eigen::VectorXd v(n);
    for (int j = 0; j < n; ++j) v[j] = std::abs(normal(rng));
    if (unif(rng) < 0.25) {
      int kept = 0;
      for (int j = 0; j < n; ++j) {
        if (unif(rng) < 0.5) {
          v[j] = 0.0;
        } else {
          ++kept;
        }
      }
      if (kept == 0) v[static_cast<int>(rng() % n)] = 1.0;
    }
    double norm = v.norm();
    if (norm == 0.0) {
      v[0] = 1.0;
      norm = 1.0;
    }
    Eigen::VectorXd lam = v * (std::sqrt(r2) / norm);
    Eigen::VectorXd nu(n);
    for (int j = 0; j < n; ++j) nu[j] = 0.1 * std::abs(normal(rng));

    results[s] = lm_descend(form, std::move(lam), std::move(nu), lo, hi, tol);
  });

  if (stats != nullptr) {
    stats->starts = starts;
    stats->accepted = 0;
    stats->min_terminal_residual = std::numeric_limits<double>::infinity();
    stats->bin_edges = {1e-12, 1e-9, 1e-6, 1e-3, 1e-2, 1e-1, 1.0, 10.0};
    stats->histogram.assign(stats->bin_edges.size() + 1, 0);
    for (const StartResult& r : results) {
      stats->min_terminal_residual =
          std::min(stats->min_terminal_residual, r.terminal_residual);
      if (r.accepted) ++stats->accepted;
      std::size_t bin = 0;
      while (bin < stats->bin_edges.size() &&
             r.terminal_residual > stats->bin_edges[bin]) {
        ++bin;
      }
      ++stats->histogram[bin];
    }
  }

  std::vector<KKTState> solutions;
  for (const StartResult& r : results) {
    if (!r.accepted) continue;
    KKTState st = kkt_residual(form, r.lambda, r.nu, tol);
    if (!st.feasible || st.residual_norm() > tol.kkt_accept) continue;
    bool duplicate = false;
    for (KKTState& kept : solutions) {
      if ((kept.lambda - st.lambda).cwiseAbs().maxCoeff() <= tol.kkt_dedup) {
        if (st.residual_norm() < kept.residual_norm()) kept = st;
        duplicate = true;
        break;
      }
    }
    if (!duplicate) solutions.push_back(std::move(st));
  }
  return solutions;
}

SphereMinimum minimize_on_sphere(const SpectralForm& form, long long starts,
                                 std::uint64_t seed, int threads,
                                 const Tolerances& tol) {
  if (starts < 1) {
    throw std::invalid_argument("minimize_on_sphere: starts must be >= 1");
  }
  const int n = form.n;

  auto value_and_gradient = [&](const Eigen::VectorXd& lam, double& value,
                                Eigen::VectorXd& grad) {
    value = lsi_objective(form, lam);
    grad = lsi_gradient(form, lam);
  };

  // Projected-gradient descent with backtracking on the positive unit sphere.
  auto pgd = [&](Eigen::VectorXd lam, int iters) {
    lam = lam.cwiseMax(0.0);
    lam /= lam.norm();
    double f;
    Eigen::VectorXd g;
    value_and_gradient(lam, f, g);
    double eta = 0.5;
    for (int it = 0; it < iters; ++it) {
      Eigen::VectorXd pg = g - (g.dot(lam)) * lam;
      if (pg.norm() < 1e-11) break;
      const double pg2 = pg.squaredNorm();
      bool moved = false;
      while (eta > 1e-18) {
        Eigen::VectorXd lam2 = (lam - eta * pg).cwiseMax(0.0);
        const double nr = lam2.norm();
        if (nr > 0.0) {
          lam2 /= nr;
          double f2;
          Eigen::VectorXd g2;
          value_and_gradient(lam2, f2, g2);
          if (f2 < f - 1e-4 * eta * pg2) {
            lam = std::move(lam2);
            f = f2;
            g = std::move(g2);
            eta = std::min(eta * 1.6, 1.0);
            moved = true;
            break;
          }
        }
        eta *= 0.5;
      }
      if (!moved) break;
    }
    return std::make_pair(std::move(lam), f);
  };

  // Newton polish in the sphere tangent space around a candidate minimum.
  auto polish = [&](Eigen::VectorXd lam) {
    double f;
    Eigen::VectorXd g;
    value_and_gradient(lam, f, g);
    for (int it = 0; it < 80; ++it) {
      Eigen::VectorXd pg = g - (g.dot(lam)) * lam;
      if (pg.norm() < 5e-13) break;
      // At a critical point the sphere multiplier equals f (degree-2
      // homogeneity), so f is the natural running estimate for it.
      const double mu = f;
      Eigen::MatrixXd P =
          Eigen::MatrixXd::Identity(n, n) - lam * lam.transpose();
      Eigen::MatrixXd H = lsi_hessian(form, lam, tol.lambda_clamp);
      H.diagonal().array() -= 2.0 * mu;
      Eigen::MatrixXd Hm = P * H * P;
      const double reg =
          std::max(1e-15, 1e-3 * std::pow(pg.norm(), 2.0 / 3.0));
      Hm.diagonal().array() += reg;
      Eigen::VectorXd d = Hm.ldlt().solve(-pg);
      if (!d.allFinite()) break;
      d -= (d.dot(lam)) * lam;
      const double accept_tol = 1e-15 * (1.0 + std::abs(f));
      bool accepted = false;
      for (double scale : {1.0, 0.5, 0.25, 0.1, 0.01}) {
        Eigen::VectorXd lam2 = (lam + scale * d).cwiseMax(0.0);
        const double nr = lam2.norm();
        if (nr == 0.0) continue;
        lam2 /= nr;
        double f2;
        Eigen::VectorXd g2;
        value_and_gradient(lam2, f2, g2);
        if (f2 <= f + accept_tol) {
          lam = std::move(lam2);
          f = f2;
          g = std::move(g2);
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    SphereMinimum out;
    out.lambda = lam;
    out.value = f;
    out.gradient_norm = (g - (g.dot(lam)) * lam).norm();
    return out;
  };

  // Stage 1: cheap descent from every start (start index `starts` is the
  // deterministic uniform-direction start).
  const std::size_t total = static_cast<std::size_t>(starts) + 1;
  std::vector<double> values(total);
  std::vector<Eigen::VectorXd> points(total);
  parallel_chunks(total, resolve_thread_count(threads), [&](std::size_t s) {
    Eigen::VectorXd start;
    if (s == static_cast<std::size_t>(starts)) {
      start = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    } else {
      std::mt19937_64 rng = chunk_rng(seed, s);
      start = random_positive_sphere(rng, n);
    }
    auto [lam, f] = pgd(std::move(start), 100);
    values[s] = f;
    points[s] = std::move(lam);
  });

  // Stage 2: polish the best handful of candidates to high accuracy.
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  const std::size_t keep = std::min<std::size_t>(8, total);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return values[a] < values[b];
                    });
  SphereMinimum best;
  bool have_best = false;
  for (std::size_t i = 0; i < keep; ++i) {
    SphereMinimum cand = polish(points[order[i]]);
    // Prefer strictly better values; within value noise prefer the cleaner
    // critical point (smaller projected gradient).
    const bool better =
        !have_best || cand.value < best.value - 1e-14 ||
        (cand.value < best.value + 1e-14 &&
         cand.gradient_norm < best.gradient_norm);
    if (better) {
      best = std::move(cand);
      have_best = true;
    }
  }
  return best;
}

SphereMinimum sample_minimum(const SpectralForm& form, long long samples,
                             std::uint64_t seed, int threads) {
  if (samples < 1) {
    throw std::invalid_argument("sample_minimum: samples must be >= 1");
  }
  const int n = form.n;
  constexpr long long kChunk = 4096;
  const std::size_t chunks =
      static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<double> chunk_min(chunks);
  std::vector<Eigen::VectorXd> chunk_arg(chunks);
  parallel_chunks(chunks, resolve_thread_count(threads), [&](std::size_t c) {
    std::mt19937_64 rng = chunk_rng(seed, c);
    const long long begin = static_cast<long long>(c) * kChunk;
    const long long end = std::min(samples, begin + kChunk);
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd arg;
    for (long long i = begin; i < end; ++i) {
      const Eigen::VectorXd lam = random_positive_sphere(rng, n);
      const double f = lsi_objective(form, lam);
      if (f < best) {
        best = f;
        arg = lam;
      }
    }
    chunk_min[c] = best;
    chunk_arg[c] = std::move(arg);
  });
  SphereMinimum out;
  out.value = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < chunks; ++c) {
    if (chunk_min[c] < out.value) {
      out.value = chunk_min[c];
      out.lambda = chunk_arg[c];
    }
  }
  const Eigen::VectorXd g = lsi_gradient(form, out.lambda);
  out.gradient_norm = (g - g.dot(out.lambda) * out.lambda).norm();
  return out;
}

Eigen::VectorXd sphere_system_residual(const SpectralForm& form,
                                       const PointVector& lambda, double mu,
                                       const Eigen::VectorXd& nu) {
  const int n = form.n;
  if (lambda.size() != n || nu.size() != n) {
    throw std::invalid_argument(
        "sphere_system_residual: lambda and nu must both have length n");
  }
  return 4.0 * (form.matrix * lambda) - (4.0 / n) * xlogx_vec(lambda) -
         2.0 * mu * lambda - (2.0 / n) * std::log(double(n)) * lambda - nu;
}

double mu_absorption_check(const SpectralForm& form,
                           const PointVector& lambda_star, double mu_star,
                           const Eigen::VectorXd& nu_star,
                           const Tolerances& tol) {
  const int n = form.n;
  if (lambda_star.size() != n || nu_star.size() != n) {
    throw std::invalid_argument(
        "mu_absorption_check: lambda and nu must both have length n");
  }
  const double norm = lambda_star.norm();
  if (std::abs(norm - 1.0) > tol.unit_norm) {
    throw std::invalid_argument(
        "mu_absorption_check: lambda_star must have unit Euclidean norm");
  }
  const double c =
      std::exp(0.5 * (n * mu_star + std::log(static_cast<double>(n))));
  KKTState absorbed =
      kkt_residual(form, c * lambda_star, c * nu_star, tol);
  return absorbed.residual_norm();
}

}  // namespace lsiforge
