// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#include "lsiforge/weight.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsiforge {

const Rational& Weight::exact(int k) const {
  if (n <= 0) {
    throw std::logic_error("Weight: uninitialized");
  }
  int r = k % n;
  if (r < 0) r += n;
  return values[static_cast<std::size_t>(r)];
}

double Weight::value(int k) const { return exact(k).to_double(); }

std::vector<double> Weight::as_doubles() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.to_double());
  return out;
}

bool Weight::is_symmetric() const {
  for (int k = 1; k < n; ++k) {
    if (exact(k) != exact(n - k)) return false;
  }
  return true;
}

bool Weight::is_nonnegative() const {
  for (const auto& v : values) {
    if (v < Rational(0)) return false;
  }
  return true;
}

Weight word_length(int n) {
  if (n < 2) {
    throw std::invalid_argument("word_length: n must be >= 2");
  }
  Weight w;
  w.n = n;
  w.label = "psi" + std::to_string(n);
  w.values.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    w.values.emplace_back(std::min(k, n - k));
  }
  return w;
}

Weight phi4() {
  Weight w;
  w.n = 4;
  w.label = "phi4";
  w.values = {Rational(0), Rational(1), Rational(8, 5), Rational(1)};
  return w;
}

Weight phi6() {
  Weight w;
  w.n = 6;
  w.label = "phi6";
  w.values = {Rational(0), Rational(1), Rational(2), Rational(1), Rational(2), Rational(1)};
  return w;
}

Weight gamma_odd_base(int n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("gamma_odd_base: n must be even and >= 4");
  }
  Weight w = word_length(n);
  w.label = "gamma1_" + std::to_string(n);
  w.values[static_cast<std::size_t>(n / 2)] = Rational(1);
  return w;
}

Weight gamma_even_tower(int n) {
  if (n < 6 || n % 2 != 0) {
    throw std::invalid_argument("gamma_even_tower: n must be even and >= 6");
  }
  Weight w = word_length(n);
  w.label = "gamma" + std::to_string(n);
  w.values[static_cast<std::size_t>(n / 2)] = Rational(n / 2 - 1);
  return w;
}

Weight scale_weight(const Weight& w, const Rational& c, const std::string& label) {
  Weight out = w;
  for (auto& v : out.values) v *= c;
  out.label = label.empty() ? c.str() + "*" + w.label : label;
  return out;
}

std::string PairReport::first_failure() const {
  if (!zeros_ok) return "zeros_ok";
  if (!base_symmetric) return "base_symmetric";
  if (!doubled_symmetric) return "doubled_symmetric";
  if (!dominates_base) return "dominates_base";
  if (!gap_ok) return "gap_ok";
  return "";
}

PairReport check_pair_condition(const Weight& gn, const Weight& g2n) {
  if (gn.n <= 0 || g2n.n != 2 * gn.n) {
    throw std::invalid_argument("check_pair_condition: sizes must be (n, 2n)");
  }
  const int n = gn.n;
  PairReport rep;
  rep.zeros_ok = gn.exact(0) == Rational(0) && g2n.exact(0) == Rational(0);
  rep.base_symmetric = gn.is_symmetric();
  rep.doubled_symmetric = g2n.is_symmetric();

  rep.dominates_base = true;
  for (int k = 1; k <= (n - 1) / 2; ++k) {
    if (g2n.exact(k) < gn.exact(k)) {
      rep.dominates_base = false;
      break;
    }
  }

  rep.gap_ok = true;
  for (int k = 0; k <= (n - 1) / 2; ++k) {
    if (g2n.exact(n - k) - g2n.exact(k) < Rational(1)) {
      rep.gap_ok = false;
      break;
    }
  }
  return rep;
}

}  // namespace lsiforge
