// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Size-doubling machinery: given a weight pair (gamma_n, gamma_2n) of sizes
// (n, 2n), an entropy inequality for size n lifts to size 2n provided
//   (a) the pair condition relating the two weights holds (check_pair_condition
//       in weight.hpp), and
//   (b) a scalar quadratic inequality in (x, r_a, r_b) is nonnegative.
// Under those preconditions the Dirichlet forms satisfy a comparison
// inequality for every interleaved nonnegative vector, and the full chain
//   H_2n[lambda] <= <a,G(n)a> + <b,G(n)b> + (1/2n)(|a| - |b|)^2
//               <= 2 <lambda, G(2n) lambda>
// holds, where lambda interleaves (a, b).  This module evaluates the
// quadratic in both parity branches, scans it over a grid plus the analytic
// vertex, checks the comparison and the chain by exact examples and
// Monte-Carlo, and recomputes the doubled Dirichlet form from the
// frequency-split identity as an independent oracle.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lsiforge/config.hpp"
#include "lsiforge/spectral.hpp"
#include "lsiforge/weight.hpp"

namespace lsiforge {

/// Result of scanning the scalar quadratic over x >= 0 and
/// (r_a, r_b) in [0,1]^2.
struct QuadraticScan {
  std::string pair_label;
  std::vector<double> grid_x;  ///< scanned x values (vertices are extra)
  std::vector<double> grid_r;  ///< r-axis values ({0} for the odd branch)
  double min_value = 0.0;
  std::array<double, 3> min_location{};  ///< (x, r_a, r_b) attaining min_value
  bool verdict = false;  ///< min_value >= -tol.slack including vertex points
  /// For dyadic-tower pairs the per-cell minimum over x has a closed form;
  /// when the pair is recognized the scan cross-evaluates it.
  bool analytic_checked = false;
  double analytic_max_diff = 0.0;
};

/// Left side of the scalar doubling inequality.
///
/// Even n:  (2 g2n(n/2) - 2 gn(n/2) - 1)(r_a + r_b x^2)
///          + g2n(n)(1 - x)^2 - (1 + x^2) + 2 x sqrt((1+r_a)(1+r_b)).
/// Odd n:   g2n(n)(1 - x)^2 - (1 + x^2) + 2 x   (the r-terms are absent;
///          the arguments are accepted and ignored).
///
/// Throws std::invalid_argument when sizes are not (n, 2n), when x < 0, or
/// when r_a or r_b leaves [0, 1].
double quadratic_lhs(const Weight& base, const Weight& doubled, double x,
                     double r_a, double r_b);

/// Scans quadratic_lhs over `resolution` points per axis (x log-spaced on
/// [0, 100] plus the vertex -B/(2A) of each r-cell whenever A > 0) and
/// reports the global minimum.  Throws std::invalid_argument when
/// resolution < 50 or the sizes are not (n, 2n).
QuadraticScan scan_quadratic(const Weight& base, const Weight& doubled,
                             int resolution = 201, int threads = 0,
                             const Tolerances& tol = default_tolerances());

/// Corner diagnostic for the size-4-over-8 case:
/// h(r_a, r_b) = r_a (24 r_b + 35) + 5 (-30 sqrt((1+r_a)(1+r_b)) + 7 r_b + 30).
/// h(0,0) = 0 and h is negative at the other corners of [0,1]^2.
double corner_function_h(double r_a, double r_b);

/// Validated pair with prebuilt forms; construct once, compare many times.
struct ComparisonContext {
  Weight base;
  Weight doubled;
  SpectralForm form_base;
  SpectralForm form_doubled;
  PairReport pair_report;
  QuadraticScan scan;
};

/// Runs both preconditions (pair condition, quadratic scan) and builds the
/// forms.  Throws std::invalid_argument naming the failing clause when a
/// precondition does not hold, when sizes are not (n, 2n), or when n < 3
/// (the comparison is not defined below size 3).
ComparisonContext make_comparison_context(
    const Weight& base, const Weight& doubled, int resolution = 201,
    int threads = 0, const Tolerances& tol = default_tolerances());

struct ComparisonResult {
  double lhs = 0.0;  ///< <a,G(n)a> + <b,G(n)b> + (1/2n)(|a|_2 - |b|_2)^2
  double rhs = 0.0;  ///< 2 <lambda, G(2n) lambda>, lambda = interleave(a, b)
  bool holds = false;
};

/// Dirichlet comparison for nonnegative a, b of length n.  Throws
/// std::invalid_argument on size mismatch or negative entries.
ComparisonResult compare_dirichlet(const ComparisonContext& context,
                                   const PointVector& a, const PointVector& b,
                                   const Tolerances& tol = default_tolerances());

/// Convenience overload that validates the pair on every call.
ComparisonResult compare_dirichlet(const Weight& base, const Weight& doubled,
                                   const PointVector& a, const PointVector& b,
                                   const Tolerances& tol = default_tolerances());

struct TwoPointBound {
  double lhs = 0.0;  ///< (1/4)(x^2 log(2x^2/(x^2+y^2)) + y^2 log(2y^2/(x^2+y^2)))
  double rhs = 0.0;  ///< ((x - y)/2)^2
};

/// Two-point entropy bound; lhs <= rhs for all admissible inputs.  Throws
/// std::invalid_argument when either input is negative or both are zero.
TwoPointBound two_point_lsi(double x, double y);

/// Monte-Carlo verification of the full doubling chain.
struct InductionReport {
  std::string pair_label;
  long long samples = 0;
  std::uint64_t seed = 0;
  /// min over samples of (comparison lhs - H_2n[lambda])
  double min_slack_entropy = 0.0;
  /// min over samples of (2 <lambda,G(2n)lambda> - comparison lhs)
  double min_slack_dirichlet = 0.0;
  PointVector worst_entropy_lambda;
  PointVector worst_dirichlet_lambda;
  bool ok = false;  ///< both slacks >= -tol.slack
};

/// Draws `samples` nonnegative vectors lambda of length 2n (dense, sparse,
/// side-heavy, and near-constant families) and min-reduces the two chain
/// slacks.  Results depend only on (samples, seed), never on the thread
/// count.  Throws on precondition failure (see make_comparison_context) or
/// samples < 1.
InductionReport induction_step(const Weight& base, const Weight& doubled,
                               long long samples,
                               std::uint64_t seed = 20260823ULL,
                               int threads = 0,
                               const Tolerances& tol = default_tolerances());

/// Independent frequency-side evaluation of 2 <lambda, G(2n) lambda>:
/// splits lambda into even/odd subsequences, takes two n-point transforms,
/// and recombines through the twiddle diagonal.  `doubled` is the size-2n
/// weight; lambda has length 2n.
double dirichlet_frequency_side(const Weight& doubled,
                                const PointVector& lambda);

}  // namespace lsiforge
