// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Heat-type semigroup on the cycle driven by a frequency weight: the
// operator P_t multiplies the k-th Fourier coefficient by e^{-t gamma(k)}.
// This module applies the semigroup, evaluates L^p norms with respect to
// the normalized counting measure, numerically estimates the optimal
// hypercontractive time t_{p,q} = inf { t : ||P_t f||_q <= ||f||_p for all
// f }, and evaluates two closed forms: the three-point optimal time for
// p = 2 and the time implied by an entropy inequality with a given
// constant.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lsiforge/config.hpp"
#include "lsiforge/weight.hpp"

namespace lsiforge {

/// Fourier multiplier semigroup member at a fixed time.
struct SemigroupOperator {
  int n = 0;
  Weight weight;
  double t = 0.0;
  Eigen::VectorXd action;  ///< action[k] = exp(-t * gamma(k))
};

/// Builds P_t for the given weight.  Throws std::invalid_argument when
/// t < 0.
SemigroupOperator make_semigroup(const Weight& weight, double t);

/// Applies P_t: transform, damp frequencies, transform back, realify.
/// The mean (frequency 0) is preserved exactly up to rounding.  Throws
/// std::invalid_argument on a length mismatch.
Eigen::VectorXd apply_semigroup(const SemigroupOperator& op,
                                const Eigen::VectorXd& f);

/// ((1/n) sum |f_j|^p)^(1/p), the L^p norm under the normalized counting
/// measure.  Throws std::invalid_argument when p < 1 or f is empty.
double lp_norm(const Eigen::VectorXd& f, double p);

/// Best value of ||P_t f||_q / ||f||_p found by projected gradient ascent
/// with `starts` deterministic multi-starts (a lower bound on the true
/// operator norm).  The search space is f >= 0 by default — the norm is
/// attained on nonnegative inputs for these multipliers — and can be
/// widened to signed f for exploration.  The constant input is always
/// among the starts, so the result is >= 1 up to rounding.  Results depend
/// only on (starts, seed), never on the thread count.
/// Throws std::invalid_argument unless 1 < p <= q, t >= 0, starts >= 1.
double max_ratio(const Weight& weight, double t, double p, double q,
                 long long starts, std::uint64_t seed = 20260823ULL,
                 int threads = 0, bool signed_f = false);

/// Result of bisecting for the optimal hypercontractive time.
struct HypTimeEstimate {
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  double t_star = 0.0;      ///< midpoint of the final bracket
  double lower_bound = 0.0; ///< (1/2) log((q-1)/(p-1)), valid for any weight
  std::pair<double, double> bracket{0.0, 0.0};
  /// Probe history: (t, best ratio found at t), in probe order.
  std::vector<std::pair<double, double>> max_ratio_at_t;
  /// Set when the escalation cap is hit before a contractive time is found;
  /// the bracket is then one-sided and t_star untrustworthy.
  bool uncertain = false;
};

/// Bisects on t, deciding contractivity at each probe by comparing
/// max_ratio against 1 + tol.contractive_threshold, until the bracket is
/// narrower than tol.bracket_width.  p == q returns t_star = 0 without
/// probing.  Throws std::invalid_argument unless 1 < p <= q.
HypTimeEstimate estimate_optimal_time(const Weight& weight, double p, double q,
                                      long long starts = 64,
                                      std::uint64_t seed = 20260823ULL,
                                      int threads = 0,
                                      const Tolerances& tol =
                                          default_tolerances());

/// Closed-form optimal time from 2 to q on the three-cycle:
///   t_{2,q} = (1/2) log[ ((2/3)(1/3)^(2/q-1) - (1/3)(2/3)^(2/q-1))
///                        / ((2/3)^(2/q) - (1/3)^(2/q)) ].
/// Continuous extension 0 as q -> 2+.  Throws std::invalid_argument when
/// q <= 2.
double z3_time_formula(double q);

/// Time implied by an entropy inequality with constant C:
/// (C/4) log((q-1)/(p-1)).  With C = 2 this is the optimal time on the
/// dyadic towers.  Throws std::invalid_argument unless C > 0 and
/// 1 < p <= q.
double gross_time_from_lsi(double C, double p, double q);

/// Smallest entry of P_t applied to the indicator of a single point, i.e.
/// the minimum of the convolution kernel.  A nonnegative value certifies
/// that this P_t preserves nonnegativity; the library records this
/// quantity rather than assuming a sign.
double min_kernel_entry(const SemigroupOperator& op);

/// Writes one row per estimate with header
/// n,p,q,t_lo,t_hi,t_star,lower_bound.
void write_hyp_csv(const std::vector<HypTimeEstimate>& estimates,
                   const std::string& path);

}  // namespace lsiforge
