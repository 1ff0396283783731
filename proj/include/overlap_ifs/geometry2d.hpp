#pragma once

#include <array>
#include <optional>
#include <vector>

#include "overlap_ifs/scalar.hpp"

namespace ifs {

/// Point in sheared coordinates: euclidean = s*u1 + t*u2 with u1 = (1,0),
/// u2 = (1/2, sqrt3/2). All triangle geometry stays rational in (s, t);
/// sqrt(3) enters only at render time.
template <class S>
struct Vec2 {
  S s, t;
};

template <class S>
struct PointOps<Vec2<S>> {
  static int compare(const Vec2<S>& a, const Vec2<S>& b, double eps) {
    int c = ScalarOps<S>::compare(a.s, b.s, eps);
    return c != 0 ? c : ScalarOps<S>::compare(a.t, b.t, eps);
  }
};

template <class S>
struct ScalarOps<Vec2<S>>;  // points are not scalars; PointOps covers measures

/// Upright (same orientation as the envelope) equilateral triangle as three
/// support values: { s >= lo_s, t >= lo_t, s + t <= hi_sum }. The side length
/// in euclidean units equals hi_sum - lo_s - lo_t; zero side is a point.
template <class S>
struct UpTriangle {
  S lo_s, lo_t, hi_sum;

  S side() const { return hi_sum - lo_s - lo_t; }
  std::array<Vec2<S>, 3> vertices() const {
    return {Vec2<S>{lo_s, lo_t}, Vec2<S>{hi_sum - lo_t, lo_t},
            Vec2<S>{lo_s, hi_sum - lo_s}};
  }
  bool contains(const Vec2<S>& p, double eps = 0.0) const {
    return ScalarOps<S>::compare(p.s, lo_s, eps) >= 0 &&
           ScalarOps<S>::compare(p.t, lo_t, eps) >= 0 &&
           ScalarOps<S>::compare(p.s + p.t, hi_sum, eps) <= 0;
  }
};

/// Downward triangle { s <= hi_s, t <= hi_t, s + t >= lo_sum } (the gaps).
template <class S>
struct DownTriangle {
  S hi_s, hi_t, lo_sum;
  S side() const { return hi_s + hi_t - lo_sum; }
  std::array<Vec2<S>, 3> vertices() const {
    return {Vec2<S>{hi_s, hi_t}, Vec2<S>{hi_s, lo_sum - hi_s},
            Vec2<S>{lo_sum - hi_t, hi_t}};
  }
};

/// Intersection of same-orientation triangles: per-direction support minima.
/// Returns nothing when the induced side is negative; zero side means a
/// vertex/edge contact (a single point for upright triangles).
template <class S>
std::optional<UpTriangle<S>> intersect_translates(const UpTriangle<S>& a,
                                                  const UpTriangle<S>& b) {
  auto max_of = [](const S& x, const S& y) {
    return ScalarOps<S>::compare(x, y, 0.0) >= 0 ? x : y;
  };
  auto min_of = [](const S& x, const S& y) {
    return ScalarOps<S>::compare(x, y, 0.0) <= 0 ? x : y;
  };
  UpTriangle<S> r{max_of(a.lo_s, b.lo_s), max_of(a.lo_t, b.lo_t),
                  min_of(a.hi_sum, b.hi_sum)};
  S zero = ScalarOps<S>::zero_like(r.lo_s);
  if (ScalarOps<S>::compare(r.side(), zero, 0.0) < 0) return std::nullopt;
  return r;
}

template <class S>
bool is_contact(const UpTriangle<S>& t) {
  S zero = ScalarOps<S>::zero_like(t.lo_s);
  return ScalarOps<S>::compare(t.side(), zero, 0.0) == 0;
}

/// List of upright triangles; pairwise interior disjointness is verified on
/// construction and recorded (it genuinely fails in the "overlap with
/// multiplicity" regimes, where the flag is the signal).
template <class S>
struct TriangleUnion {
  std::vector<UpTriangle<S>> triangles;
  bool interior_disjoint = true;
  int level = 0;

  static TriangleUnion make(std::vector<UpTriangle<S>> tris, int level,
                            double eps = 0.0) {
    TriangleUnion u;
    u.triangles = std::move(tris);
    u.level = level;
    u.interior_disjoint = true;
    for (size_t i = 0; i < u.triangles.size() && u.interior_disjoint; ++i)
      for (size_t j = i + 1; j < u.triangles.size(); ++j) {
        auto x = intersect_translates(u.triangles[i], u.triangles[j]);
        if (!x) continue;
        S zero = ScalarOps<S>::zero_like(x->side());
        if (ScalarOps<S>::compare(x->side(), zero, eps) > 0) {
          u.interior_disjoint = false;
          break;
        }
      }
    return u;
  }

  size_t size() const { return triangles.size(); }
};

}  // namespace ifs
