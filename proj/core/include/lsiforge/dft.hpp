// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include <Eigen/Dense>

namespace lsiforge {

/// The n x n discrete Fourier transform matrix with entry (j, k) = w^{jk},
/// w = exp(2*pi*i/n), rows and columns 0-indexed. (1/sqrt(n)) * entries is
/// unitary; applied twice it gives the permutation fixing 0 and swapping
/// k <-> n-k.
struct FourierMatrix {
  int n = 0;
  Eigen::MatrixXcd entries;
};

FourierMatrix make_fourier(int n);

/// Diagonal twiddle factors aligning the two half-length transforms of an
/// even/odd split with the full 2n-point transform: entry k is
/// exp(2*pi*i*k/(2n)), the primitive 2n-th root raised to k, matching the
/// positive-exponent transform convention used throughout this library.
/// Every entry has modulus 1.
struct TwiddleDiagonal {
  int n = 0;
  Eigen::VectorXcd entries;
};

TwiddleDiagonal make_twiddle(int n);

/// Forward transform x_hat[k] = sum_j x[j] * w^{jk}, computed by direct
/// O(n^2) summation with precomputed roots (bit-reproducible, no FFT
/// library). Throws std::invalid_argument on an empty input.
Eigen::VectorXcd dft_forward(const Eigen::VectorXcd& x);
Eigen::VectorXcd dft_forward(const Eigen::VectorXd& x);

/// Inverse of dft_forward: x[j] = (1/n) * sum_k x_hat[k] * w^{-jk}.
Eigen::VectorXcd dft_inverse(const Eigen::VectorXcd& x_hat);

/// Interleaving (a0, b0, a1, b1, ..., a_{n-1}, b_{n-1}) and its inverse.
Eigen::VectorXd interleave(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
std::pair<Eigen::VectorXd, Eigen::VectorXd> deinterleave(const Eigen::VectorXd& lambda);

/// The 2n-point transform of interleave(a, b) assembled from the two
/// n-point transforms: with D the twiddle diagonal,
///   out[k]     = a_hat[k] + D[k] * b_hat[k]
///   out[n + k] = a_hat[k] - D[k] * b_hat[k].
/// Equals dft_forward(interleave(a, b)). Throws std::invalid_argument when
/// the inputs are empty or of different lengths.
Eigen::VectorXcd cooley_tukey_split(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace lsiforge
