#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ifs {

using i64 = std::int64_t;
using i128 = __int128;

namespace detail {

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i64 narrow64(i128 x) {
  if (x > i128(INT64_MAX) || x < i128(INT64_MIN))
    throw std::overflow_error("exact arithmetic overflow (int64)");
  return static_cast<i64>(x);
}

// product of two i128 values, throwing instead of wrapping
inline i128 mul128(i128 a, i128 b) {
  if (a == 0 || b == 0) return 0;
  static const i128 kMax = (i128(1) << 126) - 1 + (i128(1) << 126);  // 2^127-1
  if (abs128(a) > kMax / abs128(b))
    throw std::overflow_error("exact arithmetic overflow (int128)");
  return a * b;
}

}  // namespace detail

/// Exact rational over int64 with int128 intermediates. Always normalized:
/// den > 0, gcd(num, den) = 1. Throws std::overflow_error when a result
/// does not fit; callers treat that as "exact mode out of range".
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(i64 n) : num_(n), den_(1) {}
  Rational(i64 n, i64 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    normalize(n, d);
  }

  static Rational from_i128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    Rational r;
    r.normalize128(n, d);
    return r;
  }

  /// Exact conversion: every finite double is a dyadic rational.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite double");
    if (x == 0.0) return Rational();
    int e = 0;
    double m = std::frexp(x, &e);          // x = m * 2^e, |m| in [0.5, 1)
    i64 num = static_cast<i64>(std::ldexp(m, 53));  // integer mantissa
    int shift = e - 53;
    while ((num & 1) == 0 && shift < 0) {
      num >>= 1;
      ++shift;
    }
    if (shift >= 0) {
      if (shift > 62) throw std::overflow_error("double too large for rational");
      return Rational(detail::narrow64(i128(num) << shift), 1);
    }
    if (shift < -62) throw std::overflow_error("double too small for rational");
    return Rational(num, i64(1) << (-shift));
  }

  i64 num() const { return num_; }
  i64 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return double(num_) / double(den_); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "n" or "n/d".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s), 1);
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }

 private:
  void normalize(i64 n, i64 d) { normalize128(n, d); }
  void normalize128(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = detail::narrow64(n);
    den_ = detail::narrow64(d);
  }

  i64 num_;
  i64 den_;
};

inline Rational pow(Rational base, int k) {
  Rational r(1);
  while (k > 0) {
    if (k & 1) r *= base;
    base = (k >>= 1) ? base * base : base;
  }
  return r;
}

}  // namespace ifs
