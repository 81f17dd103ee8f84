// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Stationarity-system probes for the spherical entropy minimization problem.
//
// The quadratic-form objective f(lambda) = 2<lambda, Q lambda> - H_n[lambda]
// (see spectral.hpp) has, after absorbing the sphere multiplier into a global
// rescaling, a first-order system
//
//     4 Q lambda - (4/n) (lambda_j log lambda_j)_j - nu = 0,
//     lambda >= 0,  nu >= 0,  lambda_j nu_j = 0,  0 < |lambda|^2 < n.
//
// This module evaluates residuals of that system, runs multi-start
// least-squares searches for its solutions (absence of solutions is evidence
// that f >= 0 on the positive sphere), minimizes f directly on the positive
// unit sphere, and checks the algebraic identity connecting the
// sphere-constrained system to the absorbed one.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lsiforge/config.hpp"
#include "lsiforge/spectral.hpp"

namespace lsiforge {

// Snapshot of the absorbed first-order system at a point (lambda, nu).
struct KKTState {
  PointVector lambda;
  Eigen::VectorXd nu;
  Eigen::VectorXd residual_stationarity;  // 4 Q lambda - (4/n) lambda log lambda - nu
  Eigen::VectorXd residual_complementarity;  // componentwise lambda_j * nu_j
  double norm_constraint_value = 0.0;        // |lambda|_2^2
  bool feasible = false;

  // Euclidean norm of the stacked stationarity + complementarity residual.
  double residual_norm() const;
};

// Evaluates the absorbed system at (lambda, nu).  The term
// lambda_j log lambda_j is taken to be 0 whenever lambda_j <= 0.
// `feasible` records lambda >= 0, nu >= 0, 0 < |lambda|^2 < n, and
// |lambda_j nu_j| < tol.kkt_accept for every j.
// Throws std::invalid_argument on dimension mismatch.
KKTState kkt_residual(const SpectralForm& form, const PointVector& lambda,
                      const Eigen::VectorXd& nu,
                      const Tolerances& tol = default_tolerances());

// Aggregate convergence evidence for a multi-start search.  The histogram
// counts terminal residual norms per start: bin k holds residuals in
// (bin_edges[k-1], bin_edges[k]] (bin 0 is residual <= bin_edges[0], the
// final bin is residual > bin_edges.back()).
struct SearchStats {
  long long starts = 0;
  long long accepted = 0;  // terminal states passing the solution filter
  double min_terminal_residual = 0.0;
  std::vector<double> bin_edges;
  std::vector<long long> histogram;
};

// Damped least-squares (Levenberg-Marquardt) search for solutions of the
// absorbed system from `starts` random initial points inside
// {lambda >= 0, margin*n <= |lambda|^2 <= (1-margin)*n}.  Returns every
// terminal state that is feasible with residual norm <= tol.kkt_accept,
// deduplicated up to tol.kkt_dedup in the max norm of lambda.  An empty
// return is numerical evidence (not proof) that the system has no solution.
// Deterministic for a fixed seed, independent of the thread count.
std::vector<KKTState> kkt_search(const SpectralForm& form, long long starts,
                                 std::uint64_t seed, int threads = 0,
                                 SearchStats* stats = nullptr,
                                 const Tolerances& tol = default_tolerances());

// Result of the direct minimization of f over the positive unit sphere.
struct SphereMinimum {
  PointVector lambda;          // best point found (unit norm, nonnegative)
  double value = 0.0;          // f at that point
  double gradient_norm = 0.0;  // norm of the sphere-projected gradient there
};

// Minimum of f over `samples` independent uniform draws from the
// nonnegative unit sphere.  Pure sampling, no descent; combine with
// minimize_on_sphere for a two-sided certificate.  Deterministic for a
// fixed seed, independent of the thread count.  Throws
// std::invalid_argument when samples < 1.
SphereMinimum sample_minimum(const SpectralForm& form, long long samples,
                             std::uint64_t seed, int threads = 0);

// Projected-gradient descent from `starts` random nonnegative unit starts
// (the uniform direction is always included as one extra start), followed by
// a Newton polish of the best candidates.  A reported value >= -tol.slack is
// numerical evidence that f >= 0 on the positive sphere for this weight.
// Deterministic for a fixed seed, independent of the thread count.
SphereMinimum minimize_on_sphere(const SpectralForm& form, long long starts,
                                 std::uint64_t seed, int threads = 0,
                                 const Tolerances& tol = default_tolerances());

// Stationarity residual of the sphere-constrained first-order system at
// (lambda, mu, nu) with multiplier mu for the constraint |lambda|^2 = 1:
//     4 Q lambda - (4/n) lambda log lambda - 2 mu lambda
//       - (2/n) (log n) lambda - nu.
Eigen::VectorXd sphere_system_residual(const SpectralForm& form,
                                       const PointVector& lambda, double mu,
                                       const Eigen::VectorXd& nu);

// Verifies the multiplier-absorption identity numerically: rescales a
// near-solution (lambda*, mu*, nu*) of the sphere-constrained system by
// c* = exp((n mu* + log n) / 2) and returns the residual norm of the
// absorbed system at (c* lambda*, c* nu*).  The identity predicts this is
// a constant multiple of the input residual, so exact sphere solutions map
// to absorbed residual ~0.  Throws std::invalid_argument unless
// | |lambda*|_2 - 1 | <= tol.unit_norm.
double mu_absorption_check(const SpectralForm& form,
                           const PointVector& lambda_star, double mu_star,
                           const Eigen::VectorXd& nu_star,
                           const Tolerances& tol = default_tolerances());

}  // namespace lsiforge
