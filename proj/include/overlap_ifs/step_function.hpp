#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "overlap_ifs/scalar.hpp"

namespace ifs {

/// Right-continuous piecewise-constant function with strictly increasing
/// breakpoints. values has one more entry than breakpoints; value(i) applies
/// on [bp(i-1), bp(i)), the first value below bp(0), the last from bp(last) on.
/// CDF approximants additionally have nondecreasing values ending at 1.
template <class S>
class StepFunction {
 public:
  StepFunction(std::vector<S> breakpoints, std::vector<double> values)
      : bp_(std::move(breakpoints)), v_(std::move(values)) {
    if (v_.size() != bp_.size() + 1)
      throw std::domain_error("step function needs one more value than breakpoints");
  }

  static StepFunction heaviside(const S& origin) {
    return StepFunction({origin}, {0.0, 1.0});
  }

  const std::vector<S>& breakpoints() const { return bp_; }
  const std::vector<double>& values() const { return v_; }
  int jump_count() const { return static_cast<int>(bp_.size()); }

  /// Right-continuous evaluation: value on [bp(i), bp(i+1)).
  double eval(const S& x) const {
    // index of first breakpoint > x
    auto it = std::upper_bound(bp_.begin(), bp_.end(), x,
                               [](const S& a, const S& b) { return less(a, b); });
    return v_[static_cast<size_t>(it - bp_.begin())];
  }

  /// Left limit at x.
  double eval_left(const S& x) const {
    auto it = std::lower_bound(bp_.begin(), bp_.end(), x,
                               [](const S& a, const S& b) { return less(a, b); });
    return v_[static_cast<size_t>(it - bp_.begin())];
  }

  /// G(x) = F(x/c) for c > 0 (breakpoints scale by c).
  StepFunction scale_arg(const S& c) const {
    std::vector<S> bp;
    bp.reserve(bp_.size());
    for (const auto& b : bp_) bp.push_back(b * c);
    return StepFunction(std::move(bp), v_);
  }

  /// G(x) = F(x - c).
  StepFunction shift_arg(const S& c) const {
    std::vector<S> bp;
    bp.reserve(bp_.size());
    for (const auto& b : bp_) bp.push_back(b + c);
    return StepFunction(std::move(bp), v_);
  }

  /// (F + G) / 2 on the merged breakpoint grid; coincident breakpoints
  /// (exact, or within eps in float mode) merge into one jump.
  static StepFunction average(const StepFunction& f, const StepFunction& g,
                              double eps) {
    std::vector<S> bp;
    std::vector<double> vals;
    bp.reserve(f.bp_.size() + g.bp_.size());
    vals.reserve(f.bp_.size() + g.bp_.size() + 1);
    size_t i = 0, j = 0;
    vals.push_back(0.5 * (f.v_[0] + g.v_[0]));
    while (i < f.bp_.size() || j < g.bp_.size()) {
      int take;  // -1: from g, +1: from f, 0: both
      if (i == f.bp_.size())
        take = -1;
      else if (j == g.bp_.size())
        take = 1;
      else
        take = ScalarOps<S>::compare(g.bp_[j], f.bp_[i], eps);
      if (take == 0) {
        bp.push_back(f.bp_[i]);
        ++i;
        ++j;
      } else if (take < 0) {
        bp.push_back(g.bp_[j]);
        ++j;
      } else {
        bp.push_back(f.bp_[i]);
        ++i;
      }
      vals.push_back(0.5 * (f.v_[i] + g.v_[j]));
    }
    return StepFunction(std::move(bp), std::move(vals));
  }

  StepFunction<double> to_float() const {
    std::vector<double> bp;
    bp.reserve(bp_.size());
    for (const auto& b : bp_) bp.push_back(ScalarOps<S>::to_double(b));
    return StepFunction<double>(std::move(bp), v_);
  }

 private:
  static bool less(const S& a, const S& b) {
    return ScalarOps<S>::compare(a, b, 0.0) < 0;
  }

  std::vector<S> bp_;
  std::vector<double> v_;
};

}  // namespace ifs
