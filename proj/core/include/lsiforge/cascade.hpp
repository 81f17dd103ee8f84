// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Auxiliary-function chains used by the no-solution analysis of the
// stationarity systems on the 6-cycle and the 4-cycle.
//
// Each case has a log-ratio function h with a removable singularity at x = 1
// (continuous extension h(1) = h'(1) = 0) and a chain h1..h8 of polynomial
// closed forms in (x, log x) linked by an alternating differentiate/multiply
// recurrence.  Positivity of the final chain element propagates backwards to
// positivity of h on x > 1, which certifies that a scalar equation h(r) = 0
// arising from the stationarity system has no admissible root.
//
// This module evaluates the functions with guarded numerics near x = 1,
// verifies the chain relations against finite-difference derivatives, checks
// the value table at x = 1 and the positivity verdicts on a dense grid, and
// reports everything in a CascadeReport.

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lsiforge/config.hpp"

namespace lsiforge {

// Outcome of one finite-difference check of a defining chain relation.
struct RelationCheck {
  std::string name;        // e.g. "h2 = x h1'"
  bool ok = false;         // held at every checked grid point
  double max_error = 0.0;  // worst |closed form - FD|, scaled by tolerance
  double x_worst = 0.0;    // grid point where the worst error occurred
  long long points_checked = 0;
};

// Full verification record for one chain.
struct CascadeReport {
  std::string case_id;        // "Z6" or "Z4"
  std::vector<double> grid;   // sampled x values in (1, x_max]
  // Values of h and derivatives of the chain at x = 1 (finite differences
  // centred at 1), in a fixed order, e.g. {"h(1)", 0.0}.
  std::vector<std::pair<std::string, double>> values_at_one;
  bool values_at_one_ok = false;  // zeros within tol, positives strictly so
  // Positivity of h, h1..h8 on the sampled grid.  For the 4-cycle case the
  // verdict for "h" covers the part of the grid where h is defined; see
  // domain_boundary below.
  std::vector<std::pair<std::string, bool>> sign_verdicts;
  std::vector<RelationCheck> relation_checks;
  bool relations_ok = false;
  // True when every link of the backward positivity argument held: the value
  // table signs, every chain relation, and every grid positivity verdict.
  bool monotone_chain_ok = false;
  // Number of leading grid points where h itself is defined; grid points at
  // index >= h_defined_points have a nonpositive inner log argument, where
  // the certified equation is infeasible outright (4-cycle case only; equals
  // grid.size() for the 6-cycle).
  std::size_t h_defined_points = 0;
  std::vector<std::string> notes;
  // Sampled values per grid point: h (NaN where undefined), then h1..h8.
  std::vector<std::array<double, 9>> samples;
};

// The 6-cycle log-ratio function
//   h(x) = log((x^2 + 6 x log x - 1) / (8 (x - 1))) + 1 - x log x / (x - 1)
//          - (-2 x^2 + 4 x log x + 2) / (x^2 + 6 x log x - 1),
// evaluated via the combined log of the ratio (the two log arguments change
// sign together at x = 1, so the ratio form extends h analytically across 1).
// Guards: returns the extension value 0 inside |x - 1| < tol.series_guard;
// uses the Taylor expansion at 1 inside |x - 1| <= tol.series_radius.
// Throws std::domain_error (naming the subexpression) when x <= 0 or a log
// argument is nonpositive.
double h_z6(double x, const Tolerances& tol = default_tolerances());

// The 4-cycle analogue
//   h(x) = log(4 x log x - (2/5)(x^2 - 1))
//          + (-4 x^2 + 8 x log x + 4) / (x^2 - 10 x log x - 1)
//          - log(16 (x - 1) / 5) - x log x / (x - 1) + 1.
// The inner log argument 4 x log x - (2/5)(x^2 - 1) is positive only for
// x below ~35.81; beyond that h is undefined and this function throws
// std::domain_error.  (There the equation h certifies is infeasible outright,
// which cascade_chain_z4 records separately.)
double h_z4(double x, const Tolerances& tol = default_tolerances());

// Evaluation of the pair comparison functions
//   F(x) = -(2/3) x log x + (2/3) x  and  Theta(x) = F(x) - F(2 - x)
// on 0 < x < 2.  Theta(1) = 0 and Theta'(x) = -(2/3) log(x (2 - x)).
struct PairValues {
  double F = 0.0;
  double Theta = 0.0;
};
PairValues pair_functions(double x);

// Verifies the 6-cycle chain on a log-spaced grid of `samples` points with
// x - 1 in [1e-6, x_max - 1]: closed forms against finite-difference
// derivatives for every defining relation (h1 = (x-1)^2 g^2 h', h2 = x h1',
// h3 = x h2'', h4 = x h3', h5 = x h4'', h6 = x h5', h7 = x h6',
// h8 = x h7''), the value table at 1, the positivity of h and h1..h8, and
// the closed second derivative h8''(x) = 3456 (22 x + 1) / x^2.
// Preconditions: x_max > 1, samples >= 100 (std::invalid_argument).
CascadeReport cascade_chain_z6(double x_max = 50.0, long long samples = 100000,
                               int threads = 0,
                               const Tolerances& tol = default_tolerances());

// Same contract for the 4-cycle chain, whose recurrence differs in two
// steps (h7 = x^2 h6'', and the h3 step is the second-derivative form
// h3 = x h2''; the first-derivative variant that sometimes accompanies it
// is inconsistent with the value table and is flagged in report.notes).
CascadeReport cascade_chain_z4(double x_max = 50.0, long long samples = 100000,
                               int threads = 0,
                               const Tolerances& tol = default_tolerances());

// Writes "x,h,h1,...,h8" rows for every grid point of the report.
void write_cascade_csv(const CascadeReport& report, std::ostream& os);

}  // namespace lsiforge
