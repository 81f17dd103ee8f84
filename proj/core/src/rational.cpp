// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#include "lsiforge/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lsiforge {
namespace {

using int128 = __int128;

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr int128 kInt64Max = std::numeric_limits<long long>::max();
constexpr int128 kInt64Min = std::numeric_limits<long long>::min();

}  // namespace

Rational Rational::reduce(int128 numerator, int128 denominator) {
  if (denominator == 0) {
    throw std::domain_error("Rational: zero denominator");
  }
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  if (numerator == 0) {
    return Rational();
  }
  const int128 g = gcd128(numerator, denominator);
  numerator /= g;
  denominator /= g;
  if (numerator > kInt64Max || numerator < kInt64Min || denominator > kInt64Max) {
    throw std::overflow_error("Rational: reduced value exceeds 64-bit range");
  }
  Rational r;
  r.num_ = static_cast<long long>(numerator);
  r.den_ = static_cast<long long>(denominator);
  return r;
}

Rational::Rational(long long numerator, long long denominator) {
  *this = reduce(numerator, denominator);
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("Rational::from_double: non-finite input");
  }
  if (x == 0.0) {
    return Rational();
  }
  int exp = 0;
  // mantissa in [0.5, 1); scaling by 2^53 makes it an exact integer.
  const double mantissa = std::frexp(x, &exp);
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exp -= 53;
  while (scaled % 2 == 0 && exp < 0) {
    scaled /= 2;
    ++exp;
  }
  if (exp >= 0) {
    if (exp > 62) {
      throw std::overflow_error("Rational::from_double: magnitude too large");
    }
    return reduce(static_cast<int128>(scaled) << exp, 1);
  }
  if (-exp > 62) {
    throw std::overflow_error("Rational::from_double: denominator exceeds 64-bit range");
  }
  return reduce(scaled, static_cast<int128>(1) << -exp);
}

Rational Rational::parse(const std::string& text) {
  const auto bad = [&text]() {
    return std::invalid_argument("Rational::parse: malformed value '" + text + "'");
  };
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  std::size_t end = text.size();
  while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  const std::string body = text.substr(pos, end - pos);
  if (body.empty()) throw bad();

  const auto parse_int = [&bad](const std::string& s) -> long long {
    if (s.empty()) throw bad();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };

  const auto slash = body.find('/');
  if (slash != std::string::npos) {
    const long long n = parse_int(body.substr(0, slash));
    const long long d = parse_int(body.substr(slash + 1));
    return Rational(n, d);
  }
  const auto dot = body.find('.');
  if (dot != std::string::npos) {
    // Exact decimal: "1.6" -> 16/10 before reduction.
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    const std::size_t frac_digits = body.size() - dot - 1;
    if (frac_digits == 0 || frac_digits > 18) throw bad();
    const long long n = parse_int(digits);
    int128 d = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) d *= 10;
    return reduce(n, d);
  }
  return Rational(parse_int(body));
}

std::string Rational::str() const {
  if (den_ == 1) {
    return std::to_string(num_);
  }
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return reduce(-static_cast<int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  *this = reduce(static_cast<int128>(num_) * rhs.den_ + static_cast<int128>(rhs.num_) * den_,
                 static_cast<int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = reduce(static_cast<int128>(num_) * rhs.den_ - static_cast<int128>(rhs.num_) * den_,
                 static_cast<int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = reduce(static_cast<int128>(num_) * rhs.num_, static_cast<int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) {
    throw std::domain_error("Rational: division by zero");
  }
  *this = reduce(static_cast<int128>(num_) * rhs.den_, static_cast<int128>(den_) * rhs.num_);
  return *this;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace lsiforge
