#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "overlap_ifs/atomic_measure.hpp"
#include "overlap_ifs/errors.hpp"
#include "overlap_ifs/measure_bound.hpp"
#include "overlap_ifs/scalar.hpp"
#include "overlap_ifs/step_function.hpp"
#include "overlap_ifs/word.hpp"

namespace ifs {

enum class Case1D { Cantor, Lebesgue, Overlap };  // lambda <, =, > 1/2

inline const char* to_string(Case1D c) {
  switch (c) {
    case Case1D::Cantor: return "cantor";
    case Case1D::Lebesgue: return "lebesgue";
    default: return "overlap";
  }
}

/// The two-map system tau_0(x) = lambda x, tau_1(x) = lambda (x + 1) with
/// equal weights 1/2. Scalar S is binary64 or an exact quadratic value.
template <class S>
struct IFS1D {
  S lambda;
  double eps = 1e-12;  // float-mode coincidence tolerance (absolute)
  int budget = ScalarOps<S>::exact ? 20 : 26;  // max enumeration level n

  explicit IFS1D(S lam, double tol = 1e-12) : lambda(std::move(lam)), eps(tol) {
    S z = ScalarOps<S>::zero_like(lambda);
    S o = ScalarOps<S>::one_like(lambda);
    if (!(ScalarOps<S>::compare(lambda, z, 0.0) > 0 &&
          ScalarOps<S>::compare(lambda, o, 0.0) < 0))
      throw std::domain_error("contraction ratio must lie in (0,1)");
  }

  S zero() const { return ScalarOps<S>::zero_like(lambda); }
  S one() const { return ScalarOps<S>::one_like(lambda); }
  S half_gap() const { return lambda + lambda - one(); }  // 2*lambda - 1

  /// Right endpoint b = lambda / (1 - lambda) of the attractor [0, b].
  S support_end() const { return lambda / (one() - lambda); }

  S tau(int i, const S& x) const { return i == 0 ? lambda * x : lambda * (x + one()); }

  Case1D case_tag() const {
    int c = ScalarOps<S>::compare(half_gap(), zero(), eps);
    return c < 0 ? Case1D::Cantor : (c == 0 ? Case1D::Lebesgue : Case1D::Overlap);
  }

  void check_budget(int n, const char* op) const {
    if (n < 0) throw std::domain_error("level must be nonnegative");
    if (n > budget)
      throw BudgetError(std::string(op) + ": level " + std::to_string(n) +
                        " exceeds budget " + std::to_string(budget));
  }
};

/// The node multiset N_n(lambda) = { w_1 lambda + ... + w_n lambda^n },
/// consolidated: strictly increasing values with multiplicities summing 2^n.
template <class S>
struct NodeSet {
  int level = 0;
  std::vector<std::pair<S, std::uint64_t>> entries;

  std::uint64_t total_count() const { return std::uint64_t(1) << level; }
  size_t distinct_count() const { return entries.size(); }
};

/// Outer-sum recursion: N_{k+1} = N_k (+) (N_k + lambda^{k+1}), merged and
/// consolidated at every level so storage stays at the distinct count.
template <class S>
NodeSet<S> node_set(const IFS1D<S>& f, int n) {
  f.check_budget(n, "node_set");
  NodeSet<S> ns;
  ns.level = n;
  ns.entries = {{f.zero(), 1}};
  S power = f.one();
  for (int k = 1; k <= n; ++k) {
    power = power * f.lambda;  // lambda^k
    const auto& cur = ns.entries;
    std::vector<std::pair<S, std::uint64_t>> merged;
    merged.reserve(cur.size() * 2);
    auto push = [&](S value, std::uint64_t mult) {
      if (!merged.empty() &&
          ScalarOps<S>::compare(merged.back().first, value, f.eps) == 0)
        merged.back().second += mult;
      else
        merged.emplace_back(std::move(value), mult);
    };
    size_t i = 0, j = 0;  // j walks the shifted copy (also sorted)
    while (i < cur.size() || j < cur.size()) {
      bool take_i;
      if (i == cur.size())
        take_i = false;
      else if (j == cur.size())
        take_i = true;
      else
        take_i = ScalarOps<S>::compare(cur[i].first, cur[j].first + power, f.eps) <= 0;
      if (take_i)
        push(cur[i].first, cur[i].second), ++i;
      else
        push(cur[j].first + power, cur[j].second), ++j;
    }
    ns.entries = std::move(merged);
  }
  return ns;
}

/// Test oracle path: the same multiset by direct 2^n per-word summation.
template <class S>
NodeSet<S> node_set_naive(const IFS1D<S>& f, int n) {
  f.check_budget(n, "node_set_naive");
  std::vector<WeightedAtom<S>> atoms;
  std::uint64_t total = std::uint64_t(1) << n;
  atoms.reserve(total);
  std::vector<S> powers(n + 1, f.one());
  for (int k = 1; k <= n; ++k) powers[k] = powers[k - 1] * f.lambda;
  for (std::uint64_t w = 0; w < total; ++w) {
    S v = f.zero();
    for (int k = 1; k <= n; ++k)
      if ((w >> (k - 1)) & 1) v = v + powers[k];
    atoms.push_back({v, Rational(1)});
  }
  auto cons = AtomicMeasure<S>(std::move(atoms)).consolidate(f.eps);
  NodeSet<S> ns;
  ns.level = n;
  for (const auto& a : cons.atoms())
    ns.entries.push_back({a.point, std::uint64_t(a.weight.num())});
  return ns;
}

/// Uniform measure on N_n(lambda): equals T^n delta_0.
template <class S>
AtomicMeasure<S> node_measure(const NodeSet<S>& ns) {
  std::vector<WeightedAtom<S>> atoms;
  atoms.reserve(ns.entries.size());
  Rational unit(1, i64(1) << ns.level);
  for (const auto& e : ns.entries)
    atoms.push_back({e.first, Rational(i64(e.second)) * unit});
  return AtomicMeasure<S>(std::move(atoms), true);
}

/// n-fold Hutchinson iteration T^n nu0 with T nu = (nu o tau_0^{-1} +
/// nu o tau_1^{-1}) / 2, consolidated at every step.
template <class S>
AtomicMeasure<S> hutchinson_iterate(const IFS1D<S>& f, const AtomicMeasure<S>& nu0,
                                    int n) {
  if (!nu0.is_probability())
    throw std::domain_error("hutchinson_iterate needs a probability measure");
  f.check_budget(n, "hutchinson_iterate");
  AtomicMeasure<S> cur = nu0.consolidated() ? nu0 : nu0.consolidate(f.eps);
  Rational half(1, 2);
  for (int k = 0; k < n; ++k) {
    std::vector<WeightedAtom<S>> next;
    next.reserve(cur.size() * 2);
    for (int i = 0; i < 2; ++i)
      for (const auto& a : cur.atoms())
        next.push_back({f.tau(i, a.point), a.weight * half});
    cur = AtomicMeasure<S>(std::move(next)).consolidate(f.eps);
  }
  return cur;
}

/// Cascade approximant F_n by the CDF refinement recursion
/// F_{n+1}(x) = (F_n(x/lambda) + F_n((x-lambda)/lambda)) / 2, from Heaviside.
/// Equivalently the CDF of the uniform measure on N_n (tested invariant).
template <class S>
StepFunction<S> cascade_cdf(const IFS1D<S>& f, int n) {
  f.check_budget(n, "cascade_cdf");
  StepFunction<S> F = StepFunction<S>::heaviside(f.zero());
  for (int k = 0; k < n; ++k) {
    // F(x/lambda) has breakpoints lambda*b; F((x-lambda)/lambda) adds lambda
    StepFunction<S> g0 = F.scale_arg(f.lambda);
    StepFunction<S> g1 = g0.shift_arg(f.lambda);
    F = StepFunction<S>::average(g0, g1, f.eps);
  }
  return F;
}

template <class S>
struct EncodedPoint {
  S value;  // truncated sum  sum_{i<=n} w_i lambda^i
  S tail;   // lambda^{n+1} / (1 - lambda); extensions reach [value, value+tail]
};

/// pi restricted to the first |w| digits, with the geometric tail radius.
template <class S>
EncodedPoint<S> encode_point(const IFS1D<S>& f, const Word& w) {
  if (w.alphabet != 2) throw std::domain_error("1D encoding needs binary words");
  S v = f.zero();
  S power = f.one();
  for (int i = 0; i < w.length(); ++i) {
    power = power * f.lambda;
    if (w.digits[i]) v = v + power;
  }
  S tail = power * f.lambda / (f.one() - f.lambda);
  return {v, tail};
}

/// Kantorovich-Rubinstein distance between 1D probability measures:
/// the integral of |F_a - F_b| over the merged breakpoint grid, exact
/// cumulative weights, binary64 interval widths.
template <class S>
double d1_distance(const AtomicMeasure<S>& a, const AtomicMeasure<S>& b) {
  if (!a.is_probability() || !b.is_probability())
    throw std::domain_error("d1 distance needs probability measures");
  if (!a.consolidated() || !b.consolidated())
    throw std::domain_error("d1 distance needs consolidated (sorted) measures");
  const auto& xa = a.atoms();
  const auto& xb = b.atoms();
  size_t i = 0, j = 0;
  Rational cum_diff(0);  // F_a - F_b on the current piece
  double total = 0.0;
  bool have_prev = false;
  double prev = 0.0;
  while (i < xa.size() || j < xb.size()) {
    int take;  // >= 0: consume from a, <= 0: consume from b
    if (i == xa.size())
      take = -1;
    else if (j == xb.size())
      take = 1;
    else
      take = PointOps<S>::compare(xb[j].point, xa[i].point, 0.0);
    const S& pt = (take >= 0) ? xa[i].point : xb[j].point;
    double x = ScalarOps<S>::to_double(pt);
    if (have_prev) total += std::abs(cum_diff.to_double()) * (x - prev);
    if (take >= 0) cum_diff += xa[i++].weight;
    if (take <= 0) cum_diff -= xb[j++].weight;
    prev = x;
    have_prev = true;
  }
  return total;
}

}  // namespace ifs
