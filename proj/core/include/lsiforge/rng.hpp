// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace lsiforge {

/// One round of the splitmix64 mixer. Used to derive independent,
/// well-separated stream seeds from (user seed, chunk index) so that every
/// random computation is a pure function of those two values — results are
/// identical for any thread count.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic per-chunk generator: chunk index is mixed into the user
/// seed before seeding the engine.
inline std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (chunk * 0x9e3779b97f4a7c15ULL + 1)));
}

/// Draws |N(0,1)| coordinates and normalizes: an ergodic covering of the
/// nonnegative part of the unit sphere adequate for violation search.
inline Eigen::VectorXd random_positive_sphere(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  double norm_sq = 0.0;
  do {
    for (int i = 0; i < n; ++i) {
      v(i) = std::abs(normal(rng));
    }
    norm_sq = v.squaredNorm();
  } while (norm_sq == 0.0);
  return v / std::sqrt(norm_sq);
}

/// Sparse boundary sample: `support` coordinates (chosen uniformly) carry
/// |N(0,1)| mass, the rest are exactly zero; normalized. Boundary-heavy
/// draws matter because several of the inequalities checked here are tight
/// on low-dimensional faces.
inline Eigen::VectorXd random_positive_corner(std::mt19937_64& rng, int n, int support) {
  if (support < 1) support = 1;
  if (support > n) support = n;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  int placed = 0;
  while (placed < support) {
    const int idx = pick(rng);
    if (v(idx) == 0.0) {
      double x = std::abs(normal(rng));
      if (x == 0.0) x = 1.0;
      v(idx) = x;
      ++placed;
    }
  }
  return v / v.norm();
}

}  // namespace lsiforge
