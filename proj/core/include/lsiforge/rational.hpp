// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace lsiforge {

/// Exact rational number with 64-bit numerator and denominator.
///
/// All intermediate products run through 128-bit integers; a result whose
/// reduced numerator or denominator does not fit in 64 bits throws
/// std::overflow_error rather than silently losing exactness. The value is
/// always stored normalized: denominator > 0, gcd(|num|, den) == 1.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(long long numerator, long long denominator);

  /// Exact conversion of a finite double (every finite double is a dyadic
  /// rational). Throws std::overflow_error when the dyadic denominator or
  /// numerator exceeds 64 bits and std::invalid_argument for NaN/inf.
  static Rational from_double(double x);

  /// Parses "a/b", "a", or a decimal literal such as "1.6" (routed through
  /// exact decimal expansion, not floating point).
  static Rational parse(const std::string& text);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static Rational reduce(__int128 numerator, __int128 denominator);

  long long num_;
  long long den_;
};

}  // namespace lsiforge
