#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "overlap_ifs/rational.hpp"
#include "overlap_ifs/scalar.hpp"
#include "overlap_ifs/step_function.hpp"

namespace ifs {

template <class P>
struct WeightedAtom {
  P point;
  Rational weight;  // exact; produced by cylinder counting
};

/// Finitely supported measure. Duplicate points are allowed only before a
/// consolidate() pass; consolidated measures are sorted with distinct points.
template <class P>
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<WeightedAtom<P>> atoms, bool consolidated = false)
      : atoms_(std::move(atoms)), consolidated_(consolidated) {
    for (const auto& a : atoms_)
      if (a.weight.sign() <= 0) throw std::domain_error("atom weights must be positive");
  }

  static AtomicMeasure dirac(const P& x) {
    return AtomicMeasure({{x, Rational(1)}}, true);
  }

  const std::vector<WeightedAtom<P>>& atoms() const { return atoms_; }
  size_t size() const { return atoms_.size(); }
  bool consolidated() const { return consolidated_; }

  Rational total_weight() const {
    Rational t(0);
    for (const auto& a : atoms_) t += a.weight;
    return t;
  }
  bool is_probability() const { return total_weight() == Rational(1); }

  /// Merges atoms at equal points (exact, or within eps in float mode),
  /// summing weights. Weight totals are preserved exactly.
  AtomicMeasure consolidate(double eps) const {
    std::vector<WeightedAtom<P>> sorted = atoms_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [eps](const WeightedAtom<P>& x, const WeightedAtom<P>& y) {
                       return PointOps<P>::compare(x.point, y.point, 0.0) < 0;
                     });
    std::vector<WeightedAtom<P>> out;
    out.reserve(sorted.size());
    for (auto& a : sorted) {
      if (!out.empty() && PointOps<P>::compare(out.back().point, a.point, eps) == 0)
        out.back().weight += a.weight;
      else
        out.push_back(a);
    }
    return AtomicMeasure(std::move(out), true);
  }

 private:
  std::vector<WeightedAtom<P>> atoms_;
  bool consolidated_ = false;
};

/// CDF of a consolidated 1D measure: a jump of each atom's weight at the atom,
/// right-continuous; the values are exact dyadic/triadic rationals rendered in
/// binary64 (exact for the denominators produced at supported depths).
template <class S>
StepFunction<S> cdf(const AtomicMeasure<S>& m) {
  if (!m.consolidated()) throw std::domain_error("cdf requires a consolidated measure");
  std::vector<S> bp;
  std::vector<double> vals;
  bp.reserve(m.size());
  vals.reserve(m.size() + 1);
  vals.push_back(0.0);
  Rational cum(0);
  for (const auto& a : m.atoms()) {
    bp.push_back(a.point);
    cum += a.weight;
    vals.push_back(cum.to_double());
  }
  return StepFunction<S>(std::move(bp), std::move(vals));
}

template <class P>
AtomicMeasure<double> to_float(const AtomicMeasure<P>& m) {
  std::vector<WeightedAtom<double>> atoms;
  atoms.reserve(m.size());
  for (const auto& a : m.atoms())
    atoms.push_back({ScalarOps<P>::to_double(a.point), a.weight});
  return AtomicMeasure<double>(std::move(atoms), m.consolidated());
}

}  // namespace ifs
