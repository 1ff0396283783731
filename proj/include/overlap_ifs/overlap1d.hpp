#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "overlap_ifs/errors.hpp"
#include "overlap_ifs/ifs1d.hpp"
#include "overlap_ifs/measure_bound.hpp"

namespace ifs {

namespace detail {

// Branch-and-bound over the binary prefix tree. A prefix with partial sum v
// reaches exactly [v, v + lambda^{k+1}/(1-lambda)]; if that hull is inside E
// all 2^(n-k) extensions count, if disjoint none do, otherwise split.
template <class S>
struct EnclosureDfs {
  const IFS1D<S>& f;
  S lo, hi;  // closed target interval E
  int n;
  std::uint64_t inside = 0, straddle = 0;
  std::vector<S> tail;  // tail[k] = lambda^{k+1}/(1-lambda)
  std::vector<S> power; // power[k] = lambda^k

  EnclosureDfs(const IFS1D<S>& f_, S lo_, S hi_, int n_)
      : f(f_), lo(std::move(lo_)), hi(std::move(hi_)), n(n_) {
    power.resize(n + 2);
    tail.resize(n + 1);
    power[0] = f.one();
    for (int k = 1; k <= n + 1; ++k) power[k] = power[k - 1] * f.lambda;
    S geom = f.one() / (f.one() - f.lambda);
    for (int k = 0; k <= n; ++k) tail[k] = power[k + 1] * geom;
  }

  void visit(const S& v, int k) {
    // exact comparisons classify the closed hull against the closed interval;
    // a comparison the field cannot carry counts as undecided (sound)
    int cls = 2;
    try {
      S reach_hi = v + tail[k];
      if (ScalarOps<S>::compare(reach_hi, lo, 0.0) < 0 ||
          ScalarOps<S>::compare(v, hi, 0.0) > 0)
        cls = 0;
      else if (ScalarOps<S>::compare(v, lo, 0.0) >= 0 &&
               ScalarOps<S>::compare(reach_hi, hi, 0.0) <= 0)
        cls = 1;
    } catch (const std::overflow_error&) {
      cls = 2;
    }
    if (cls == 0) return;
    if (cls == 1) {
      inside += std::uint64_t(1) << (n - k);
      return;
    }
    if (k == n) {
      ++straddle;
      return;
    }
    visit(v, k + 1);
    visit(v + power[k + 1], k + 1);
  }
};

}  // namespace detail

/// Rigorous enclosure of mu_lambda([lo, hi]) by cylinder counting at level n:
/// lo = (fully inside words)/2^n, hi adds the straddling words.
template <class S>
MeasureBound interval_measure_enclosure(const IFS1D<S>& f, const S& lo, const S& hi,
                                        int n) {
  // counts stay exactly representable in binary64 up to here
  if (n > 50) throw BudgetError("interval_measure_enclosure: level beyond 2^50 words");
  if (n < 0) throw std::domain_error("level must be nonnegative");
  detail::EnclosureDfs<S> dfs(f, lo, hi, n);
  dfs.visit(f.zero(), 0);
  double scale = std::ldexp(1.0, -n);  // counts are < 2^53 here, so exact
  return MeasureBound(double(dfs.inside) * scale,
                      double(dfs.inside + dfs.straddle) * scale, n);
}

/// Enclosure of the overlap mass mu(tau_0(X) cap tau_1(X)) = mu([lambda,
/// lambda^2/(1-lambda)]). Requires lambda > 1/2 (essential overlap).
template <class S>
MeasureBound overlap_enclosure(const IFS1D<S>& f, int n) {
  if (f.case_tag() != Case1D::Overlap)
    throw std::domain_error("overlap_enclosure requires lambda > 1/2");
  S lo = f.lambda;
  S hi = f.lambda * f.lambda / (f.one() - f.lambda);
  return interval_measure_enclosure(f, lo, hi, n);
}

/// Enclosure of mu(tau_1(X)) = mu([lambda, b]); 2*mu(tau_1 X) - 1 encloses the
/// overlap mass (union identity), used as a cross-check.
template <class S>
MeasureBound branch_measure_enclosure(const IFS1D<S>& f, int n) {
  return interval_measure_enclosure(f, f.lambda, f.support_end(), n);
}

struct LowerBound1D {
  Rational bound;
  int m = 0;           // minimal m with lambda + ... + lambda^m >= 1
  bool golden_or_above = false;
};

/// 1/3 for lambda >= (sqrt5-1)/2, else 1/(2^m - 1) with the minimal m such
/// that lambda + ... + lambda^m >= 1. Exact comparisons in exact mode, the
/// golden test is sign(lambda^2 + lambda - 1).
template <class S>
LowerBound1D overlap_lower_bound(const IFS1D<S>& f) {
  if (f.case_tag() != Case1D::Overlap)
    throw std::domain_error("overlap lower bound requires lambda in (1/2,1)");
  S one = f.one();
  S golden_test = f.lambda * f.lambda + f.lambda - one;
  int cmp = ScalarOps<S>::compare(golden_test, f.zero(), f.eps);
  if (cmp >= 0) return {Rational(1, 3), 2, true};
  S partial = f.zero();
  S power = f.one();
  for (int m = 1; m <= 62; ++m) {
    power = power * f.lambda;
    partial = partial + power;
    if (ScalarOps<S>::compare(partial, one, f.eps) >= 0)
      return {Rational(1, (i64(1) << m) - 1), m, false};
  }
  throw NumericalError("lambda too close to 1/2 for the lower-bound corollary");
}

/// Lebesgue measure of the overlap interval: lambda (2 lambda - 1)/(1-lambda).
template <class S>
S lebesgue_overlap(const IFS1D<S>& f) {
  if (f.case_tag() != Case1D::Overlap)
    throw std::domain_error("lebesgue_overlap requires lambda in (1/2,1)");
  return f.lambda * f.half_gap() / (f.one() - f.lambda);
}

/// Moments M_k of mu_lambda via the self-similarity recursion
///   M_k = lambda^k * sum_{j<k} C(k,j) M_j / (2 (1 - lambda^k)),
/// with M_0 = 1. Closed forms: M_1 = lambda/(2(1-lambda)),
/// M_2 = lambda^2/(2(1-lambda)^2(1+lambda)).
template <class S>
std::vector<S> moments(const IFS1D<S>& f, int max_k) {
  if (max_k < 0) throw std::domain_error("moment order must be nonnegative");
  std::vector<S> m;
  m.reserve(max_k + 1);
  m.push_back(f.one());
  S two = ScalarOps<S>::from_int(f.lambda, 2);
  std::vector<std::vector<Rational>> choose(max_k + 1);
  for (int k = 0; k <= max_k; ++k) {
    choose[k].resize(k + 1, Rational(1));
    for (int j = 1; j < k; ++j) choose[k][j] = choose[k - 1][j - 1] + choose[k - 1][j];
  }
  S lam_k = f.one();
  for (int k = 1; k <= max_k; ++k) {
    lam_k = lam_k * f.lambda;
    S acc = f.zero();
    for (int j = 0; j < k; ++j)
      acc = acc + ScalarOps<S>::from_rational(f.lambda, choose[k][j]) * m[j];
    m.push_back(lam_k * acc / (two * (f.one() - lam_k)));
  }
  return m;
}

template <class S>
S moment(const IFS1D<S>& f, int k) {
  return moments(f, k).back();
}

struct CharFnValue {
  std::complex<double> value;
  double truncation_bound;  // |t| lambda^{terms+1} / (2 (1-lambda))
};

/// Truncated infinite product  mu_hat(t) = e^{i t M1} prod cos(t lambda^n / 2).
inline CharFnValue char_fn(double lambda, double t, int terms) {
  if (terms < 1) throw std::domain_error("char_fn needs at least one term");
  double m1 = lambda / (2.0 * (1.0 - lambda));
  std::complex<double> v = std::polar(1.0, t * m1);
  double p = lambda;
  double prod = 1.0;
  for (int n = 1; n <= terms; ++n) {
    prod *= std::cos(t * p / 2.0);
    p *= lambda;
  }
  double bound = std::abs(t) * p / (2.0 * (1.0 - lambda));
  return {v * prod, bound};
}

/// |mu_hat(t)|^2 = prod cos^2(t lambda^n / 2) (the phase factor drops out).
inline double char_fn_sq(double lambda, double t, int terms) {
  double p = lambda;
  double prod = 1.0;
  for (int n = 1; n <= terms; ++n) {
    double c = std::cos(t * p / 2.0);
    prod *= c * c;
    p *= lambda;
  }
  return prod;
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& g, double a,
                               double b, double fa, double fm, double fb, double whole,
                               double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = g(lm), frm = g(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0) throw NumericalError("adaptive quadrature failed to converge");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& g, double a, double b,
                        double tol) {
  double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

/// Wiener averaged square modulus (1/2T) int_{-T}^{T} |mu_hat|^2 dt, a
/// diagnostic for atomlessness: it decreases toward 0 in T when mu has no
/// atoms. Cannot prove atomlessness at finite T.
inline double wiener_atom_test(double lambda, double T, double tol = 1e-8) {
  if (T <= 0.0) throw std::domain_error("wiener_atom_test requires T > 0");
  // choose the truncation so the product tail is negligible against tol
  int terms = 1;
  double p = lambda;
  while (T * p / (2.0 * (1.0 - lambda)) > tol * 1e-2 && terms < 4000) {
    ++terms;
    p *= lambda;
  }
  auto g = [lambda, terms](double t) { return char_fn_sq(lambda, t, terms); };
  // integrand is even, so average over [0, T]
  double pieces = std::max(1.0, std::ceil(T / 16.0));  // keep panels oscillation-sized
  double acc = 0.0, a = 0.0;
  for (int i = 0; i < int(pieces); ++i) {
    double b = T * double(i + 1) / pieces;
    acc += detail::integrate(g, a, b, tol / pieces);
    a = b;
  }
  return acc / T;
}

/// Max over atoms of |w(a) - w(mirror(a))| where mirror reflects about the
/// midpoint of [0, lambda + ... + lambda^n]. Exactly 0 in exact mode.
template <class S>
double symmetry_defect(const IFS1D<S>& f, int n) {
  if (n < 1) throw std::domain_error("symmetry_defect needs n >= 1");
  auto m = node_measure(node_set(f, n));
  S full = f.zero();
  S power = f.one();
  for (int k = 1; k <= n; ++k) {
    power = power * f.lambda;
    full = full + power;
  }
  const auto& atoms = m.atoms();
  double defect = 0.0;
  // consolidated atoms are sorted; the mirror of atom i is atom (count-1-i)
  // when the multiset is symmetric, verified here positionally
  size_t cnt = atoms.size();
  for (size_t i = 0; i < cnt; ++i) {
    const auto& a = atoms[i];
    const auto& b = atoms[cnt - 1 - i];
    S mirrored = full - a.point;
    if (ScalarOps<S>::compare(mirrored, b.point, f.eps) != 0) {
      // positional mismatch counts as full weight discrepancy
      defect = std::max(defect, a.weight.to_double());
      continue;
    }
    defect = std::max(defect, std::abs((a.weight - b.weight).to_double()));
  }
  return defect;
}

/// Quantitative 1D overlap summary.
struct OverlapReport1D {
  double lambda = 0.0;
  double overlap_lo = 0.0, overlap_hi = 0.0;  // [lambda, lambda^2/(1-lambda)]
  MeasureBound enclosure;
  MeasureBound branch_enclosure;   // mu(tau_1 X); 2*mid - 1 re-encloses overlap
  MeasureBound cross_check;        // [2 lo - 1, 2 hi - 1] clamped to [0,1]
  LowerBound1D lower_bound;
  double lebesgue = 0.0;
  int depth = 0;
};

template <class S>
OverlapReport1D overlap_report(const IFS1D<S>& f, int n) {
  OverlapReport1D r;
  r.lambda = ScalarOps<S>::to_double(f.lambda);
  r.overlap_lo = r.lambda;
  r.overlap_hi = ScalarOps<S>::to_double(f.lambda * f.lambda / (f.one() - f.lambda));
  r.enclosure = overlap_enclosure(f, n);
  r.branch_enclosure = branch_measure_enclosure(f, n);
  r.cross_check = MeasureBound(std::max(0.0, 2.0 * r.branch_enclosure.lo - 1.0),
                               std::min(1.0, 2.0 * r.branch_enclosure.hi - 1.0), n);
  r.lower_bound = overlap_lower_bound(f);
  r.lebesgue = ScalarOps<S>::to_double(lebesgue_overlap(f));
  r.depth = n;
  return r;
}

}  // namespace ifs
