// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#include "lsiforge/dft.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lsiforge {
namespace {

// Roots of unity w^m = exp(2*pi*i*m/n) for m = 0..n-1. Computed from the
// angle each time (n is small everywhere in this library) so that w^{jk}
// lookups are exact in the table index, not accumulated products.
std::vector<std::complex<double>> unit_roots(int n) {
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double angle = 2.0 * std::numbers::pi * m / n;
    roots[static_cast<std::size_t>(m)] = {std::cos(angle), std::sin(angle)};
  }
  return roots;
}

}  // namespace

FourierMatrix make_fourier(int n) {
  if (n < 1) {
    throw std::invalid_argument("make_fourier: n must be positive");
  }
  const auto roots = unit_roots(n);
  FourierMatrix f;
  f.n = n;
  f.entries.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      f.entries(j, k) = roots[static_cast<std::size_t>((static_cast<long long>(j) * k) % n)];
    }
  }
  return f;
}

TwiddleDiagonal make_twiddle(int n) {
  if (n < 1) {
    throw std::invalid_argument("make_twiddle: n must be positive");
  }
  TwiddleDiagonal d;
  d.n = n;
  d.entries.resize(n);
  for (int k = 0; k < n; ++k) {
    const double angle = std::numbers::pi * k / n;  // 2*pi*k / (2n)
    d.entries(k) = {std::cos(angle), std::sin(angle)};
  }
  return d;
}

Eigen::VectorXcd dft_forward(const Eigen::VectorXcd& x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) {
    throw std::invalid_argument("dft_forward: empty input");
  }
  const auto roots = unit_roots(n);
  Eigen::VectorXcd out(n);
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      acc += x(j) * roots[static_cast<std::size_t>((static_cast<long long>(j) * k) % n)];
    }
    out(k) = acc;
  }
  return out;
}

Eigen::VectorXcd dft_forward(const Eigen::VectorXd& x) {
  return dft_forward(Eigen::VectorXcd(x.cast<std::complex<double>>()));
}

Eigen::VectorXcd dft_inverse(const Eigen::VectorXcd& x_hat) {
  const int n = static_cast<int>(x_hat.size());
  if (n == 0) {
    throw std::invalid_argument("dft_inverse: empty input");
  }
  const auto roots = unit_roots(n);
  Eigen::VectorXcd out(n);
  for (int j = 0; j < n; ++j) {
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      // w^{-jk} = conj(w^{jk})
      acc += x_hat(k) *
             std::conj(roots[static_cast<std::size_t>((static_cast<long long>(j) * k) % n)]);
    }
    out(j) = acc / static_cast<double>(n);
  }
  return out;
}

Eigen::VectorXd interleave(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument("interleave: inputs must be nonempty and of equal length");
  }
  const int n = static_cast<int>(a.size());
  Eigen::VectorXd out(2 * n);
  for (int j = 0; j < n; ++j) {
    out(2 * j) = a(j);
    out(2 * j + 1) = b(j);
  }
  return out;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> deinterleave(const Eigen::VectorXd& lambda) {
  const int m = static_cast<int>(lambda.size());
  if (m == 0 || m % 2 != 0) {
    throw std::invalid_argument("deinterleave: input length must be even and positive");
  }
  const int n = m / 2;
  Eigen::VectorXd a(n), b(n);
  for (int j = 0; j < n; ++j) {
    a(j) = lambda(2 * j);
    b(j) = lambda(2 * j + 1);
  }
  return {a, b};
}

Eigen::VectorXcd cooley_tukey_split(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument("cooley_tukey_split: inputs must be nonempty and of equal length");
  }
  const int n = static_cast<int>(a.size());
  const Eigen::VectorXcd a_hat = dft_forward(a);
  const Eigen::VectorXcd b_hat = dft_forward(b);
  const TwiddleDiagonal d = make_twiddle(n);
  Eigen::VectorXcd out(2 * n);
  for (int k = 0; k < n; ++k) {
    const std::complex<double> twiddled = d.entries(k) * b_hat(k);
    out(k) = a_hat(k) + twiddled;
    out(n + k) = a_hat(k) - twiddled;
  }
  return out;
}

}  // namespace lsiforge
