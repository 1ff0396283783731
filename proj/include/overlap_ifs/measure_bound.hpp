#pragma once

#include <stdexcept>

namespace ifs {

/// Closed interval [lo, hi] rigorously enclosing a measure value, produced by
/// cylinder counting at enumeration level `depth`.
struct MeasureBound {
  double lo = 0.0;
  double hi = 1.0;
  int depth = 0;

  MeasureBound() = default;
  MeasureBound(double l, double h, int d) : lo(l), hi(h), depth(d) {
    if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
      throw std::domain_error("measure bound must satisfy 0 <= lo <= hi <= 1");
  }

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool intersects(const MeasureBound& o) const { return lo <= o.hi && o.lo <= hi; }
};

}  // namespace ifs
