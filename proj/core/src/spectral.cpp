// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#include "lsiforge/spectral.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "lsiforge/dft.hpp"

namespace lsiforge {
namespace {

// cos(2*pi*m/n) as an exact rational, available exactly when n divides one
// of {1, 2, 3, 4, 6} worth of turn fractions. Returns nullopt otherwise.
std::optional<Rational> rational_cos_turn(int m, int n) {
  int r = m % n;
  if (r < 0) r += n;
  switch (n) {
    case 1:
      return Rational(1);
    case 2:
      return r == 0 ? Rational(1) : Rational(-1);
    case 3:
      return r == 0 ? Rational(1) : Rational(-1, 2);
    case 4:
      switch (r) {
        case 0: return Rational(1);
        case 2: return Rational(-1);
        default: return Rational(0);
      }
    case 6:
      switch (r) {
        case 0: return Rational(1);
        case 1: return Rational(1, 2);
        case 2: return Rational(-1, 2);
        case 3: return Rational(-1);
        case 4: return Rational(-1, 2);
        default: return Rational(1, 2);
      }
    default:
      return std::nullopt;
  }
}

// First circulant column in exact arithmetic:
//   c[d] = (1/n^2) sum_m gamma(m) cos(2*pi*m*d/n).
// Valid for symmetric weights on the n values with rational cosines.
std::optional<std::vector<Rational>> exact_first_column(const Weight& gamma) {
  const int n = gamma.n;
  if (!rational_cos_turn(0, n).has_value()) {
    return std::nullopt;
  }
  try {
    std::vector<Rational> column;
    column.reserve(static_cast<std::size_t>(n));
    const Rational inv_n2(1, static_cast<long long>(n) * n);
    for (int d = 0; d < n; ++d) {
      Rational acc(0);
      for (int m = 0; m < n; ++m) {
        acc += gamma.exact(m) * *rational_cos_turn(m * d, n);
      }
      column.push_back(acc * inv_n2);
    }
    return column;
  } catch (const std::overflow_error&) {
    // User-supplied weights can carry dyadic denominators too large for the
    // exact path; the double-precision matrix below is still valid.
    return std::nullopt;
  }
}

void check_dimensions(const SpectralForm& form, const PointVector& lambda, const char* where) {
  if (static_cast<int>(lambda.size()) != form.n) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

}  // namespace

SpectralForm build_form(const Weight& gamma, const Tolerances& tol) {
  if (gamma.n <= 0 || static_cast<int>(gamma.values.size()) != gamma.n) {
    throw std::invalid_argument("build_form: malformed weight");
  }
  SpectralForm form;
  form.n = gamma.n;
  form.gamma = gamma;
  form.symmetric_weight = gamma.is_symmetric();

  const int n = gamma.n;
  const FourierMatrix f = make_fourier(n);
  Eigen::VectorXcd diag(n);
  for (int k = 0; k < n; ++k) {
    diag(k) = std::complex<double>(gamma.value(k), 0.0);
  }
  // G = (1/n) F diag(gamma) F^{-1} with F^{-1} = (1/n) F^H.
  const Eigen::MatrixXcd complex_form =
      (f.entries * diag.asDiagonal() * f.entries.adjoint()) / (static_cast<double>(n) * n);
  form.max_imag_abs = complex_form.imag().cwiseAbs().maxCoeff();
  if (form.symmetric_weight && form.max_imag_abs >= tol.realify) {
    throw std::runtime_error(
        "build_form: imaginary residue " + std::to_string(form.max_imag_abs) +
        " exceeds realification tolerance for a symmetric weight");
  }
  form.matrix = complex_form.real();
  if (!form.symmetric_weight) {
    form.complex_matrix = complex_form;
  }

  form.eigenvalues.resize(n);
  for (int k = 0; k < n; ++k) {
    form.eigenvalues(k) = gamma.value(k) / n;
  }

  if (form.symmetric_weight) {
    if (auto column = exact_first_column(gamma)) {
      form.exact = true;
      form.first_column_exact = std::move(*column);
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          int d = (j - k) % n;
          if (d < 0) d += n;
          form.matrix(j, k) = form.first_column_exact[static_cast<std::size_t>(d)].to_double();
        }
      }
    }
  }
  return form;
}

double dirichlet(const SpectralForm& form, const PointVector& lambda) {
  check_dimensions(form, lambda, "dirichlet");
  return lambda.dot(form.matrix * lambda);
}

double entropy(const PointVector& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n == 0) {
    throw std::invalid_argument("entropy: empty vector");
  }
  double norm_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    if (lambda(k) < 0.0) {
      throw std::invalid_argument("entropy: negative entry at index " + std::to_string(k));
    }
    norm_sq += lambda(k) * lambda(k);
  }
  if (norm_sq == 0.0) {
    throw std::invalid_argument("entropy: zero vector");
  }
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double sq = lambda(k) * lambda(k);
    if (sq > 0.0) {
      acc += sq * std::log(n * sq / norm_sq);
    }
  }
  return acc / n;
}

double lsi_objective(const SpectralForm& form, const PointVector& lambda) {
  check_dimensions(form, lambda, "lsi_objective");
  return 2.0 * dirichlet(form, lambda) - entropy(lambda);
}

Eigen::VectorXd lsi_gradient(const SpectralForm& form, const PointVector& lambda) {
  check_dimensions(form, lambda, "lsi_gradient");
  const int n = form.n;
  const double norm_sq = lambda.squaredNorm();
  if (norm_sq == 0.0) {
    throw std::invalid_argument("lsi_gradient: zero vector");
  }
  Eigen::VectorXd grad = 4.0 * (form.matrix * lambda);
  for (int j = 0; j < n; ++j) {
    if (lambda(j) > 0.0) {
      grad(j) -= (2.0 * lambda(j) / n) * std::log(n * lambda(j) * lambda(j) / norm_sq);
    }
  }
  return grad;
}

Eigen::MatrixXd lsi_hessian(const SpectralForm& form, const PointVector& lambda,
                            double lambda_clamp) {
  check_dimensions(form, lambda, "lsi_hessian");
  const int n = form.n;
  const double norm_sq = lambda.squaredNorm();
  if (norm_sq == 0.0) {
    throw std::invalid_argument("lsi_hessian: zero vector");
  }
  // Entropy part: diag((2/n) log(n l_j^2/s) + 4/n) - (4/n) l l^T / s.
  Eigen::MatrixXd hess = 4.0 * form.matrix;
  for (int j = 0; j < n; ++j) {
    const double lj = std::max(lambda(j), lambda_clamp);
    hess(j, j) -= (2.0 / n) * std::log(n * lj * lj / norm_sq) + 4.0 / n;
  }
  hess += (4.0 / n) * (lambda * lambda.transpose()) / norm_sq;
  return hess;
}

EntropySplit entropy_split(const PointVector& a, const PointVector& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument("entropy_split: halves must be nonempty and of equal length");
  }
  const int n = static_cast<int>(a.size());
  for (int k = 0; k < n; ++k) {
    if (a(k) < 0.0 || b(k) < 0.0) {
      throw std::invalid_argument("entropy_split: negative entry");
    }
  }
  const double x_sq = a.squaredNorm();
  const double y_sq = b.squaredNorm();
  const double total = x_sq + y_sq;
  if (total == 0.0) {
    throw std::invalid_argument("entropy_split: zero total mass");
  }
  EntropySplit split;
  split.inner_a = x_sq > 0.0 ? 0.5 * entropy(a) : 0.0;
  split.inner_b = y_sq > 0.0 ? 0.5 * entropy(b) : 0.0;
  double outer = 0.0;
  if (x_sq > 0.0) outer += x_sq * std::log(2.0 * x_sq / total);
  if (y_sq > 0.0) outer += y_sq * std::log(2.0 * y_sq / total);
  split.outer = outer / (2.0 * n);
  return split;
}

}  // namespace lsiforge
