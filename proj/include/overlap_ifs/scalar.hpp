#pragma once

#include <cmath>

#include "overlap_ifs/quadratic.hpp"
#include "overlap_ifs/rational.hpp"

namespace ifs {

/// Uniform interface over the two scale-arithmetic modes: binary64 with an
/// absolute tolerance eps, and exact quadratic-field values (eps ignored).
template <class S>
struct ScalarOps;

/// Point-compare trait for measure supports; scalars compare directly, 2D
/// points lexicographically (specialized where Vec2 is defined).
template <class P>
struct PointOps {
  static int compare(const P& a, const P& b, double eps) {
    return ScalarOps<P>::compare(a, b, eps);
  }
};

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static double zero_like(double) { return 0.0; }
  static double one_like(double) { return 1.0; }
  static double from_int(double, long long k) { return double(k); }
  static double from_rational(double, const Rational& r) { return r.to_double(); }
  static double to_double(double x) { return x; }
  static int compare(double a, double b, double eps) {
    if (std::abs(a - b) <= eps) return 0;
    return a < b ? -1 : 1;
  }
  static bool equal(double a, double b, double eps) { return compare(a, b, eps) == 0; }
  static bool less(double a, double b, double eps) { return compare(a, b, eps) < 0; }
};

template <>
struct ScalarOps<Quadratic> {
  static constexpr bool exact = true;
  static Quadratic zero_like(const Quadratic& x) { return x.field()->zero(); }
  static Quadratic one_like(const Quadratic& x) { return x.field()->one(); }
  static Quadratic from_int(const Quadratic& x, long long k) {
    return x.field()->from_rational(Rational(k));
  }
  static Quadratic from_rational(const Quadratic& x, const Rational& r) {
    return x.field()->from_rational(r);
  }
  static double to_double(const Quadratic& x) { return x.to_double(); }
  static int compare(const Quadratic& a, const Quadratic& b, double) {
    // binary64 fast path: the approximation error is a few ulp of the
    // coefficient scale, so a wide margin decides the sign soundly; ties go
    // through the exact rational path
    double ad = a.to_double(), bd = b.to_double();
    double scale = std::abs(a.a().to_double()) + std::abs(a.b().to_double()) +
                   std::abs(b.a().to_double()) + std::abs(b.b().to_double()) + 1.0;
    double diff = ad - bd;
    if (std::abs(diff) > 1e-9 * scale) return diff < 0.0 ? -1 : 1;
    return (a - b).sign();
  }
  static bool equal(const Quadratic& a, const Quadratic& b, double) { return a == b; }
  static bool less(const Quadratic& a, const Quadratic& b, double eps) {
    return compare(a, b, eps) < 0;
  }
};

}  // namespace ifs
