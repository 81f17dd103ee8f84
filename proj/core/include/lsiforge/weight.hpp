// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "lsiforge/rational.hpp"

namespace lsiforge {

/// A nonnegative symbol (weight) on the cyclic group Z_n.
///
/// Values are kept as exact rationals; floating point enters only when a
/// quadratic form or semigroup is built from the weight. Named builders
/// always produce gamma(0) = 0 and, except for deliberately experimental
/// inputs, the reflection symmetry gamma(k) = gamma(n-k).
struct Weight {
  int n = 0;
  std::vector<Rational> values;  ///< values[k] = gamma(k), size n
  std::string label;

  const Rational& exact(int k) const;     ///< gamma(k mod n)
  double value(int k) const;              ///< gamma(k mod n) as double
  std::vector<double> as_doubles() const;
  bool is_symmetric() const;              ///< gamma(k) == gamma(n-k) exactly
  bool is_nonnegative() const;
};

/// Graph distance from 0 on the n-cycle: psi_n(k) = min(k, n-k). Requires n >= 2.
Weight word_length(int n);

/// The weight (0, 1, 8/5, 1) on Z_4.
Weight phi4();

/// The weight (0, 1, 2, 1, 2, 1) on Z_6.
Weight phi6();

/// Word length with the midpoint value replaced by 1: gamma(n/2) = 1.
/// Requires even n >= 4. Coincides with phi6() at n = 6.
Weight gamma_odd_base(int n);

/// Word length with the midpoint value replaced by n/2 - 1.
/// Requires even n >= 6.
Weight gamma_even_tower(int n);

/// Entrywise rescaling c * w, with an optional new label.
Weight scale_weight(const Weight& w, const Rational& c, const std::string& label = "");

/// Clause-level outcome of the predicate linking a weight on Z_n to a
/// weight on Z_{2n}. The doubling machinery requires the conjunction; the
/// per-clause detail exists so diagnostics can show which clause an
/// experimental pair violates.
struct PairReport {
  bool zeros_ok = false;          ///< gamma_n(0) = gamma_2n(0) = 0
  bool base_symmetric = false;    ///< gamma_n(k) = gamma_n(n-k)
  bool doubled_symmetric = false; ///< gamma_2n(k) = gamma_2n(2n-k)
  bool dominates_base = false;    ///< gamma_2n(k) >= gamma_n(k), 1 <= k <= floor((n-1)/2)
  bool gap_ok = false;            ///< gamma_2n(n-k) - gamma_2n(k) >= 1, 0 <= k <= floor((n-1)/2)

  bool all() const {
    return zeros_ok && base_symmetric && doubled_symmetric && dominates_base && gap_ok;
  }
  /// Name of the first failing clause, or "" when every clause holds.
  std::string first_failure() const;
};

/// Evaluates all five clauses exactly (rational arithmetic, no tolerances).
/// Throws std::invalid_argument unless g2n.n == 2 * gn.n.
PairReport check_pair_condition(const Weight& gn, const Weight& g2n);

}  // namespace lsiforge
