// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lsiforge/config.hpp"
#include "lsiforge/rational.hpp"
#include "lsiforge/weight.hpp"

namespace lsiforge {

/// A nonnegative vector argument of the entropy and Dirichlet forms.
using PointVector = Eigen::VectorXd;

/// The quadratic-form matrix G = (1/n) F diag(gamma) F^{-1} built from a
/// weight, together with its spectrum. For a symmetric weight the matrix is
/// real, symmetric, and circulant; eigenvalues are gamma(k)/n with the
/// Fourier characters as eigenvectors.
struct SpectralForm {
  int n = 0;
  Weight gamma;
  Eigen::MatrixXd matrix;           ///< realified form matrix
  Eigen::VectorXd eigenvalues;      ///< eigenvalues[k] = gamma(k)/n, frequency order
  bool symmetric_weight = false;    ///< reflection symmetry held exactly
  double max_imag_abs = 0.0;        ///< largest |imag| discarded by realification
  bool exact = false;               ///< rational circulant column available
  std::vector<Rational> first_column_exact;  ///< column 0 as exact rationals (when exact)
  Eigen::MatrixXcd complex_matrix;  ///< retained only for asymmetric weights
};

/// Builds the form. For a symmetric weight the construction fails loudly
/// (std::runtime_error) if the complex product has imaginary parts above
/// tol.realify instead of silently truncating. For n in {1,2,3,4,6} the
/// circulant column is additionally computed in exact rational arithmetic
/// (the cosines involved are rational) and the matrix entries are taken
/// from it. An asymmetric weight sets symmetric_weight = false and retains
/// the complex matrix.
SpectralForm build_form(const Weight& gamma, const Tolerances& tol = default_tolerances());

/// <lambda, G lambda>. Nonnegative for nonnegative weights (the spectrum
/// is gamma(k)/n >= 0). Throws on dimension mismatch.
double dirichlet(const SpectralForm& form, const PointVector& lambda);

/// H_n[lambda] = (1/n) sum_k lambda_k^2 log(n lambda_k^2 / |lambda|_2^2).
/// Summands with lambda_k = 0 contribute 0 (continuous extension of
/// x log(x^2) at 0). Evaluated in a single guarded pass over the ratio
/// n lambda_k^2 / |lambda|^2 to avoid cancellation for near-constant
/// vectors. Requires lambda >= 0 and lambda != 0.
double entropy(const PointVector& lambda);

/// f(lambda) = 2 <lambda, G lambda> - H_n[lambda]; nonnegativity of this
/// objective over the nonnegative orthant is the log-Sobolev inequality
/// with constant 2 for the weight the form was built from.
double lsi_objective(const SpectralForm& form, const PointVector& lambda);

/// Analytic gradient of lsi_objective: 4 G lambda - grad H, where
/// (grad H)_j = (2 lambda_j / n) log(n lambda_j^2 / |lambda|^2) and the
/// j-th component is 0 at lambda_j = 0.
Eigen::VectorXd lsi_gradient(const SpectralForm& form, const PointVector& lambda);

/// Hessian of lsi_objective (dense, symmetric). The entropy part is
/// diag((2/n) log(n lambda_j^2/s) + 4/n) - (4/n) lambda lambda^T / s with
/// s = |lambda|^2; coordinates with lambda_j = 0 take the clamped value.
Eigen::MatrixXd lsi_hessian(const SpectralForm& form, const PointVector& lambda,
                            double lambda_clamp = default_tolerances().lambda_clamp);

/// Decomposition of the entropy of an interleaving into half-entropies and
/// a two-level outer term:
///   inner_a + inner_b + outer = H_{2n}[interleave(a, b)],
/// inner_a = H_n[a]/2 (0 when a = 0), inner_b likewise, and
/// outer = (1/2n) (x^2 log(2x^2/(x^2+y^2)) + y^2 log(2y^2/(x^2+y^2)))
/// with x = |a|_2, y = |b|_2. Throws when both halves are zero.
struct EntropySplit {
  double inner_a = 0.0;
  double inner_b = 0.0;
  double outer = 0.0;
  double sum() const { return inner_a + inner_b + outer; }
};
EntropySplit entropy_split(const PointVector& a, const PointVector& b);

}  // namespace lsiforge
