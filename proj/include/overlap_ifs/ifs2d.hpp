#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "overlap_ifs/atomic_measure.hpp"
#include "overlap_ifs/cuntz.hpp"
#include "overlap_ifs/errors.hpp"
#include "overlap_ifs/geometry2d.hpp"
#include "overlap_ifs/measure_bound.hpp"

namespace ifs {

/// Three-map planar family tau_i(x) = lambda (x + u_i) with u_0 = 0,
/// u_1 = (1,0), u_2 = (1/2, sqrt3/2); in sheared coordinates u_1 = (1,0) and
/// u_2 = (0,1), so the maps are rational in lambda. Envelope triangle T has
/// vertices (lambda/(1-lambda)) u_i.
template <class S>
struct IFS2D {
  S lambda;
  double eps = 1e-12;
  int budget = 13;  // ternary word depth cap (3^13 ~ 1.6M)

  explicit IFS2D(S lam, double tol = 1e-12) : lambda(std::move(lam)), eps(tol) {
    S z = zero();
    S o = one();
    if (!(ScalarOps<S>::compare(lambda, z, 0.0) > 0 &&
          ScalarOps<S>::compare(lambda, o, 0.0) < 0))
      throw std::domain_error("contraction ratio must lie in (0,1)");
  }

  S zero() const { return ScalarOps<S>::zero_like(lambda); }
  S one() const { return ScalarOps<S>::one_like(lambda); }
  S support_end() const { return lambda / (one() - lambda); }  // b

  Vec2<S> tau(int i, const Vec2<S>& p) const {
    switch (i) {
      case 0: return {lambda * p.s, lambda * p.t};
      case 1: return {lambda * (p.s + one()), lambda * p.t};
      case 2: return {lambda * p.s, lambda * (p.t + one())};
      default: throw std::domain_error("2D branch index must be 0, 1 or 2");
    }
  }

  UpTriangle<S> tau(int i, const UpTriangle<S>& t) const {
    switch (i) {
      case 0: return {lambda * t.lo_s, lambda * t.lo_t, lambda * t.hi_sum};
      case 1:
        return {lambda * (t.lo_s + one()), lambda * t.lo_t,
                lambda * (t.hi_sum + one())};
      case 2:
        return {lambda * t.lo_s, lambda * (t.lo_t + one()),
                lambda * (t.hi_sum + one())};
      default: throw std::domain_error("2D branch index must be 0, 1 or 2");
    }
  }

  UpTriangle<S> envelope() const { return {zero(), zero(), support_end()}; }

  void check_budget(int n, const char* op) const {
    if (n < 0) throw std::domain_error("level must be nonnegative");
    if (n > budget)
      throw BudgetError(std::string(op) + ": level " + std::to_string(n) +
                        " exceeds budget " + std::to_string(budget));
  }
};

/// The literal OV set operation: OV(S) = union over i<j of tau_i(S) cap
/// tau_j(S), with all cross pairs of member triangles. Empty intersections are
/// dropped; zero-side contacts are returned separately.
template <class S>
struct OvResult {
  TriangleUnion<S> triangles;       // positive-side components
  std::vector<Vec2<S>> contacts;    // side-0 touch points
};

template <class S>
OvResult<S> ov_apply(const IFS2D<S>& f, const TriangleUnion<S>& in) {
  std::vector<UpTriangle<S>> img[3];
  for (int i = 0; i < 3; ++i) {
    img[i].reserve(in.size());
    for (const auto& t : in.triangles) img[i].push_back(f.tau(i, t));
  }
  std::vector<UpTriangle<S>> out;
  std::vector<Vec2<S>> contacts;
  S zero = f.zero();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (const auto& a : img[i])
        for (const auto& b : img[j]) {
          auto x = intersect_translates(a, b);
          if (!x) continue;
          if (ScalarOps<S>::compare(x->side(), zero, f.eps) == 0)
            contacts.push_back({x->lo_s, x->lo_t});
          else
            out.push_back(*x);
        }
  // drop exact duplicates
  std::vector<UpTriangle<S>> dedup;
  for (const auto& t : out) {
    bool seen = false;
    for (const auto& u : dedup)
      if (ScalarOps<S>::compare(t.lo_s, u.lo_s, 0.0) == 0 &&
          ScalarOps<S>::compare(t.lo_t, u.lo_t, 0.0) == 0 &&
          ScalarOps<S>::compare(t.hi_sum, u.hi_sum, 0.0) == 0) {
        seen = true;
        break;
      }
    if (!seen) dedup.push_back(t);
  }
  OvResult<S> r;
  r.triangles = TriangleUnion<S>::make(std::move(dedup), in.level + 1, f.eps);
  r.contacts = std::move(contacts);
  return r;
}

/// Level-n overlap set ov(tau^n(T)): the pairwise child overlaps inside every
/// level-(n-1) cell, i.e. union over |xi| = n-1 of tau_xi(OV(T)); 3^n
/// triangles, ordered by (cell word, pair index).
template <class S>
TriangleUnion<S> overlap_level(const IFS2D<S>& f, int n) {
  if (n < 1) throw std::domain_error("overlap level starts at n = 1");
  f.check_budget(n, "overlap_level");
  OvResult<S> base = ov_apply(f, TriangleUnion<S>::make({f.envelope()}, 0, f.eps));
  std::vector<UpTriangle<S>> base_tris = base.triangles.triangles;
  if (base_tris.empty())
    return TriangleUnion<S>::make({}, n, f.eps);  // lambda <= 1/2: no overlap at scale
  std::vector<UpTriangle<S>> cur = std::move(base_tris);
  for (int depth = 1; depth < n; ++depth) {
    std::vector<UpTriangle<S>> next;
    next.reserve(cur.size() * 3);
    // prepend a map: triangles of word xi become words 0 xi, 1 xi, 2 xi;
    // equivalently each level adds one outer application of every tau_i
    for (int i = 0; i < 3; ++i)
      for (const auto& t : cur) next.push_back(f.tau(i, t));
    cur = std::move(next);
  }
  return TriangleUnion<S>::make(std::move(cur), n, f.eps);
}

enum class Regime {
  DisjointOverlaps,   // (i)   lambda in (1/2, golden)
  VertexTouching,     // (ii)  lambda = golden
  ResidualTriangles,  // (iii) lambda in (golden, 2/3)
  GapClosing,         // (iv)  lambda = 2/3
  NoGaps              // (v)   lambda in (2/3, 1)
};

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::DisjointOverlaps: return "disjoint-ov";
    case Regime::VertexTouching: return "vertex-touching";
    case Regime::ResidualTriangles: return "residual";
    case Regime::GapClosing: return "gap-closing";
    default: return "no-gaps";
  }
}

struct Classification {
  bool in_taxonomy = true;   // false for lambda <= 1/2 (gasket / fractal)
  Regime regime = Regime::DisjointOverlaps;
  bool boundary_ambiguous = false;  // float mode, within eps of a threshold
};

/// Regime (i)-(v) by comparing lambda with (sqrt5-1)/2 and 2/3. The golden
/// test is the sign of lambda^2 + lambda - 1, exact in exact mode; float mode
/// reports ambiguity inside the eps band.
template <class S>
Classification classify_regime(const IFS2D<S>& f) {
  Classification c;
  S zero = f.zero();
  S one = f.one();
  S half_test = f.lambda + f.lambda - one;           // sign of lambda - 1/2
  if (ScalarOps<S>::compare(half_test, zero, f.eps) <= 0) {
    c.in_taxonomy = false;
    return c;
  }
  S golden_test = f.lambda * f.lambda + f.lambda - one;
  S two_thirds_test = ScalarOps<S>::from_int(f.lambda, 3) * f.lambda -
                      ScalarOps<S>::from_int(f.lambda, 2);  // 3 lambda - 2
  int g = ScalarOps<S>::compare(golden_test, zero, f.eps);
  int h = ScalarOps<S>::compare(two_thirds_test, zero, f.eps);
  if (!ScalarOps<S>::exact) {
    double gl = ScalarOps<S>::to_double(golden_test);
    double th = ScalarOps<S>::to_double(two_thirds_test);
    c.boundary_ambiguous = std::abs(gl) <= f.eps || std::abs(th) <= f.eps;
  }
  if (g < 0)
    c.regime = Regime::DisjointOverlaps;
  else if (g == 0)
    c.regime = Regime::VertexTouching;
  else if (h < 0)
    c.regime = Regime::ResidualTriangles;
  else if (h == 0)
    c.regime = Regime::GapClosing;
  else
    c.regime = Regime::NoGaps;
  return c;
}

/// Report of ov(tau^n T) cap ov(tau^{n+1} T).
template <class S>
struct ChainReport {
  enum class Kind { Empty, VertexContacts, TriangleUnionKind } kind;
  std::vector<Vec2<S>> contacts;
  std::vector<UpTriangle<S>> triangles;
  // per upper-level triangle: how many lower-level triangles touch it
  std::vector<int> contact_counts;
};

template <class S>
ChainReport<S> chain_intersection(const IFS2D<S>& f, int n) {
  f.check_budget(n + 1, "chain_intersection");
  TriangleUnion<S> a = overlap_level(f, n);
  TriangleUnion<S> b = overlap_level(f, n + 1);
  ChainReport<S> r;
  r.contact_counts.assign(a.size(), 0);
  S zero = f.zero();
  for (size_t i = 0; i < a.size(); ++i)
    for (const auto& tb : b.triangles) {
      auto x = intersect_translates(a.triangles[i], tb);
      if (!x) continue;
      if (ScalarOps<S>::compare(x->side(), zero, f.eps) == 0) {
        r.contacts.push_back({x->lo_s, x->lo_t});
        ++r.contact_counts[i];
      } else {
        r.triangles.push_back(*x);
      }
    }
  if (!r.triangles.empty())
    r.kind = ChainReport<S>::Kind::TriangleUnionKind;
  else if (!r.contacts.empty())
    r.kind = ChainReport<S>::Kind::VertexContacts;
  else
    r.kind = ChainReport<S>::Kind::Empty;
  return r;
}

/// Regime implied by the chain geometry plus the gap side sign; must agree
/// with classify_regime on every lambda (tested invariant).
template <class S>
Classification regime_from_chain(const IFS2D<S>& f, const ChainReport<S>& chain) {
  Classification c;
  S zero = f.zero();
  if (ScalarOps<S>::compare(f.lambda + f.lambda - f.one(), zero, f.eps) <= 0) {
    c.in_taxonomy = false;
    return c;
  }
  switch (chain.kind) {
    case ChainReport<S>::Kind::Empty:
      c.regime = Regime::DisjointOverlaps;
      return c;
    case ChainReport<S>::Kind::VertexContacts:
      c.regime = Regime::VertexTouching;
      return c;
    default: {
      // gap side = lambda (2 - 3 lambda)/(1 - lambda): sign of (2 - 3 lambda)
      S gap_sign = ScalarOps<S>::from_int(f.lambda, 2) -
                   ScalarOps<S>::from_int(f.lambda, 3) * f.lambda;
      int g = ScalarOps<S>::compare(gap_sign, zero, f.eps);
      c.regime = g > 0 ? Regime::ResidualTriangles
                       : (g == 0 ? Regime::GapClosing : Regime::NoGaps);
      return c;
    }
  }
}

/// Central gap G1 = T \ (tau_0 T u tau_1 T u tau_2 T): the downward triangle
/// { s <= lambda, t <= lambda, s+t >= lambda b }, empty from lambda = 2/3 on.
/// Side length lambda (2 - 3 lambda) / (1 - lambda).
template <class S>
std::optional<DownTriangle<S>> gap_region(const IFS2D<S>& f) {
  DownTriangle<S> g{f.lambda, f.lambda, f.lambda * f.support_end()};
  S zero = f.zero();
  if (ScalarOps<S>::compare(g.side(), zero, 0.0) <= 0) return std::nullopt;
  return g;
}

namespace detail {

// ternary prefix DFS with exact reachable-set hulls: extensions of a prefix
// with partial sum P fill P + lambda^k * X, contained in the upright triangle
// { s >= P_s, t >= P_t, s+t <= P_s + P_t + lambda^k b }
template <class S>
struct Enclosure2Dfs {
  const IFS2D<S>& f;
  const TriangleUnion<S>& region;
  int n;
  std::uint64_t inside = 0, straddle = 0;
  std::vector<S> power;
  S b;

  Enclosure2Dfs(const IFS2D<S>& f_, const TriangleUnion<S>& region_, int n_)
      : f(f_), region(region_), n(n_), b(f_.support_end()) {
    power.resize(n + 1);
    power[0] = f.one();
    for (int k = 1; k <= n; ++k) power[k] = power[k - 1] * f.lambda;
  }

  // 0 = outside all, 1 = inside some member, 2 = undecided; comparisons the
  // field cannot carry (rational-lambda denominator blowup) degrade to 2
  int classify(const UpTriangle<S>& cell) const {
    try {
      bool any_touch = false;
      for (const auto& t : region.triangles) {
        auto x = intersect_translates(cell, t);
        if (!x) continue;
        any_touch = true;
        if (ScalarOps<S>::compare(cell.lo_s, t.lo_s, 0.0) >= 0 &&
            ScalarOps<S>::compare(cell.lo_t, t.lo_t, 0.0) >= 0 &&
            ScalarOps<S>::compare(cell.hi_sum, t.hi_sum, 0.0) <= 0)
          return 1;
      }
      return any_touch ? 2 : 0;
    } catch (const std::overflow_error&) {
      return 2;
    }
  }

  void visit(const Vec2<S>& p, int k) {
    UpTriangle<S> cell{p.s, p.t, p.s + p.t + power[k] * b};
    int c = classify(cell);
    if (c == 0) return;
    if (c == 1) {
      inside += int_pow(3, n - k);
      return;
    }
    if (k == n) {
      ++straddle;
      return;
    }
    for (int i = 0; i < 3; ++i) {
      Vec2<S> q = p;
      if (i == 1) q.s = q.s + power[k + 1];
      if (i == 2) q.t = q.t + power[k + 1];
      visit(q, k + 1);
    }
  }
};

}  // namespace detail

/// Rigorous enclosure of mu_lambda(region) by ternary cylinder counting with
/// exact triangle-hull classification (sound: undecided cells widen hi only).
template <class S>
MeasureBound measure2d_enclosure(const IFS2D<S>& f, const TriangleUnion<S>& region,
                                 int n) {
  f.check_budget(n, "measure2d_enclosure");
  detail::Enclosure2Dfs<S> dfs(f, region, n);
  dfs.visit({f.zero(), f.zero()}, 0);
  double scale = std::pow(3.0, -n);
  return MeasureBound(double(dfs.inside) * scale,
                      double(dfs.inside + dfs.straddle) * scale, n);
}

// ---- fractal-aware branch and pairwise-overlap measures ----
//
// mu(tau_i(X)) is the mass of the image fractal, not of its hull triangle:
// the hull strictly over-measures once overlaps carry foreign-branch mass.
// The event form fixes this. pi(omega) lies in tau_i(X) iff pi(omega) =
// pi(i eta) for some eta; truncating both sides at level n, the word omega|n
// then has a level-n witness with first digit i whose truncated value is
//   - identical (exact coincidence)            -> cylinder certainly inside,
//   - within two tail radii                    -> possibly inside.
// Counting the two cases gives a rigorous [lo, hi]; exact coincidences are
// decided in the quadratic field, so golden-mode bounds are certified.

namespace detail {

template <class S>
struct LabeledNodes2D {
  // consolidated level-n values with multiplicities and first-digit witnesses
  std::vector<Vec2<S>> value;
  std::vector<std::uint64_t> mult;
  std::vector<unsigned> digit_mask;          // bit i: has a first-digit-i witness
  std::vector<std::vector<Vec2<S>>> digits;  // per-digit witness values, sorted
  int level = 0;
};

template <class S>
LabeledNodes2D<S> labeled_nodes2d(const IFS2D<S>& f, int n) {
  if (n < 1) throw std::domain_error("labeled nodes need n >= 1");
  f.check_budget(n, "labeled_nodes2d");
  // level n-1 consolidated values with multiplicities
  AtomicMeasure<Vec2<S>> prev = node_measure2d(f, n - 1);
  std::uint64_t total_prev = int_pow(3, n - 1);
  // prepending digit i: pi_n(i w) = lambda u_i + lambda pi_{n-1}(w)
  LabeledNodes2D<S> out;
  out.level = n;
  out.digits.resize(3);
  std::vector<std::vector<std::pair<Vec2<S>, std::uint64_t>>> lists(3);
  for (int i = 0; i < 3; ++i) {
    lists[i].reserve(prev.size());
    for (const auto& a : prev.atoms()) {
      Vec2<S> v{f.lambda * a.point.s, f.lambda * a.point.t};
      if (i == 1) v.s = v.s + f.lambda;
      if (i == 2) v.t = v.t + f.lambda;
      // weight * 3^{n-1} is the integer multiplicity at the previous level
      std::uint64_t m =
          std::uint64_t((a.weight * Rational(i64(total_prev))).num());
      lists[i].push_back({v, m});
      out.digits[i].push_back(v);
    }
  }
  // 3-way sorted merge with digit masks
  std::array<size_t, 3> idx{0, 0, 0};
  auto peek_min = [&]() {
    int best = -1;
    for (int i = 0; i < 3; ++i) {
      if (idx[i] == lists[i].size()) continue;
      if (best < 0 ||
          PointOps<Vec2<S>>::compare(lists[i][idx[i]].first,
                                     lists[best][idx[best]].first, f.eps) < 0)
        best = i;
    }
    return best;
  };
  while (true) {
    int i = peek_min();
    if (i < 0) break;
    const auto& [v, m] = lists[i][idx[i]];
    if (!out.value.empty() &&
        PointOps<Vec2<S>>::compare(out.value.back(), v, f.eps) == 0) {
      out.mult.back() += m;
      out.digit_mask.back() |= 1u << i;
    } else {
      out.value.push_back(v);
      out.mult.push_back(m);
      out.digit_mask.push_back(1u << i);
    }
    ++idx[i];
  }
  return out;
}

// squared euclidean distance in sheared coordinates: ds^2 + ds dt + dt^2
template <class S>
S euclid_sq(const Vec2<S>& a, const Vec2<S>& b) {
  S ds = a.s - b.s;
  S dt = a.t - b.t;
  return ds * ds + ds * dt + dt * dt;
}

// is some witness value within distance d of v?  |ds| <= 2 d / sqrt(3), so a
// sorted scan over the s-window suffices; a binary64 pre-filter with a wide
// relative margin settles the clear cases, the borderline ones go through the
// exact squared test (only the hi side of an enclosure consumes this, so the
// filter margins only trade tightness, never soundness)
template <class S>
bool near_witness(const std::vector<Vec2<S>>& witnesses, const Vec2<S>& v,
                  const S& d) {
  S d_sq = d * d;
  S window = d + d;  // 2d >= 2d/sqrt(3)
  S lo = v.s - window;
  double vs = ScalarOps<S>::to_double(v.s), vt = ScalarOps<S>::to_double(v.t);
  double dd_d = ScalarOps<S>::to_double(d);
  double d_sq_d = dd_d * dd_d;
  double window_d = 2.0 * dd_d;
  auto it = std::lower_bound(
      witnesses.begin(), witnesses.end(), lo,
      [](const Vec2<S>& w, const S& x) { return ScalarOps<S>::compare(w.s, x, 0.0) < 0; });
  for (; it != witnesses.end(); ++it) {
    double ds = ScalarOps<S>::to_double(it->s) - vs;
    if (ds > window_d * (1.0 + 1e-9) + 1e-12) break;
    double dt = ScalarOps<S>::to_double(it->t) - vt;
    double dist_sq = ds * ds + ds * dt + dt * dt;
    if (dist_sq > d_sq_d * (1.0 + 1e-6) + 1e-24) continue;   // clearly outside
    if (dist_sq < d_sq_d * (1.0 - 1e-6) - 1e-24) return true;  // clearly inside
    try {
      S dd = euclid_sq(*it, v);
      if (ScalarOps<S>::compare(dd, d_sq, 0.0) <= 0) return true;
    } catch (const std::overflow_error&) {
      return true;  // undecidable in the field: err toward "possibly near"
    }
  }
  return false;
}

}  // namespace detail

/// Branch masses mu(tau_i(X)) and pairwise overlap masses mu(tau_i X cap
/// tau_j X) enclosed in a single labeled-node pass.
struct Fractal2DReport {
  MeasureBound branch[3];
  MeasureBound pair01, pair02, pair12;
  int depth = 0;
};

template <class S>
Fractal2DReport fractal_measures2d(const IFS2D<S>& f, int n) {
  auto nodes = detail::labeled_nodes2d(f, n);
  S tail = f.one();
  for (int k = 0; k <= n; ++k) tail = tail * f.lambda;
  tail = tail / (f.one() - f.lambda);  // lambda^{n+1}/(1-lambda), euclid radius
  S two_tail = tail + tail;
  std::uint64_t blo[3] = {0, 0, 0}, bhi_extra[3] = {0, 0, 0};
  std::uint64_t plo[3] = {0, 0, 0}, phi_extra[3] = {0, 0, 0};  // 01, 02, 12
  const int pair_digits[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (size_t i = 0; i < nodes.value.size(); ++i) {
    bool near[3];
    for (int d = 0; d < 3; ++d) {
      bool has = nodes.digit_mask[i] & (1u << d);
      near[d] = has || detail::near_witness(nodes.digits[d], nodes.value[i], two_tail);
      if (has)
        blo[d] += nodes.mult[i];
      else if (near[d])
        bhi_extra[d] += nodes.mult[i];
    }
    for (int p = 0; p < 3; ++p) {
      int di = pair_digits[p][0], dj = pair_digits[p][1];
      unsigned want = (1u << di) | (1u << dj);
      if ((nodes.digit_mask[i] & want) == want)
        plo[p] += nodes.mult[i];
      else if (near[di] && near[dj])
        phi_extra[p] += nodes.mult[i];
    }
  }
  double scale = std::pow(3.0, -n);
  Fractal2DReport r;
  r.depth = n;
  for (int d = 0; d < 3; ++d)
    r.branch[d] = MeasureBound(double(blo[d]) * scale,
                               double(blo[d] + bhi_extra[d]) * scale, n);
  r.pair01 = MeasureBound(double(plo[0]) * scale, double(plo[0] + phi_extra[0]) * scale, n);
  r.pair02 = MeasureBound(double(plo[1]) * scale, double(plo[1] + phi_extra[1]) * scale, n);
  r.pair12 = MeasureBound(double(plo[2]) * scale, double(plo[2] + phi_extra[2]) * scale, n);
  return r;
}

/// Rigorous enclosure of mu(tau_digit(X)) by first-digit witness counting at
/// level n. Exact mode certifies both sides; float mode inherits the eps
/// consolidation.
template <class S>
MeasureBound branch2d_enclosure(const IFS2D<S>& f, int digit, int n) {
  if (digit < 0 || digit > 2) throw std::domain_error("digit must be 0, 1 or 2");
  return fractal_measures2d(f, n).branch[digit];
}

/// Rigorous enclosure of mu(tau_i(X) cap tau_j(X)) (i != j) by simultaneous
/// witness counting.
template <class S>
MeasureBound pair_overlap2d_enclosure(const IFS2D<S>& f, int di, int dj, int n) {
  if (di == dj || di < 0 || dj < 0 || di > 2 || dj > 2)
    throw std::domain_error("pair overlap needs two distinct digits");
  auto r = fractal_measures2d(f, n);
  if ((di == 0 && dj == 1) || (di == 1 && dj == 0)) return r.pair01;
  if ((di == 0 && dj == 2) || (di == 2 && dj == 0)) return r.pair02;
  return r.pair12;
}

struct LowerBound2D {
  Rational bound;
  int m = 0;
  bool exact_golden = false;
  bool monotonicity_caveat = false;  // above golden: inherited claim, unverified
};

/// mu(OV_01) lower bound: 1/24 at golden (exact family count); 1/(3 (3^m - 1))
/// below golden with the minimal m from the partial-sum condition; above
/// golden 1/24 is reported with a caveat flag, since it rests on an unproved
/// monotonicity claim.
template <class S>
LowerBound2D overlap2d_lower_bound(const IFS2D<S>& f) {
  S zero = f.zero();
  S one = f.one();
  if (ScalarOps<S>::compare(f.lambda + f.lambda - one, zero, f.eps) <= 0 ||
      ScalarOps<S>::compare(f.lambda, one, 0.0) >= 0)
    throw std::domain_error("2D lower bound requires lambda in (1/2,1)");
  int g = ScalarOps<S>::compare(f.lambda * f.lambda + f.lambda - one, zero, f.eps);
  if (g == 0) return {Rational(1, 24), 2, true, false};
  if (g > 0) return {Rational(1, 24), 2, false, true};
  S partial = zero;
  S power = one;
  for (int m = 1; m <= 38; ++m) {
    power = power * f.lambda;
    partial = partial + power;
    if (ScalarOps<S>::compare(partial, one, f.eps) >= 0) {
      i64 p3 = 1;
      for (int i = 0; i < m; ++i) p3 *= 3;
      return {Rational(1, 3 * (p3 - 1)), m, false, false};
    }
  }
  throw NumericalError("lambda too close to 1/2 for the 2D lower bound");
}

/// Triple overlap tau_0 T cap tau_1 T cap tau_2 T: empty interior iff
/// lambda <= 2/3 (side lambda (b - 2)).
template <class S>
bool triple_overlap_empty(const IFS2D<S>& f) {
  UpTriangle<S> t01 = *intersect_translates(f.tau(0, f.envelope()), f.tau(1, f.envelope()));
  auto t012 = intersect_translates(t01, f.tau(2, f.envelope()));
  if (!t012) return true;
  return is_contact(*t012);
}

struct DimensionValue {
  double value = 0.0;
  bool in_proposition_range = true;  // lambda in (1/2, 2/3)
};

template <class S>
DimensionValue hausdorff_dim(const IFS2D<S>& f) {
  double lam = ScalarOps<S>::to_double(f.lambda);
  if (lam <= 0.0 || lam >= 1.0) throw std::domain_error("dimension needs lambda in (0,1)");
  DimensionValue d;
  d.value = -std::log(3.0) / std::log(lam);
  d.in_proposition_range = lam > 0.5 && lam < 2.0 / 3.0;
  return d;
}

/// 120-degree rotation about the centroid of T: (s,t) -> (b - s - t, s).
/// Exact in sheared coordinates; maps upright triangles to upright triangles.
template <class S>
UpTriangle<S> rotate120(const IFS2D<S>& f, const UpTriangle<S>& t) {
  S b = f.support_end();
  return {b - t.hi_sum, t.lo_s, b - t.lo_t};
}

inline Eigen::Vector2d to_euclidean(double s, double t) {
  return {s + 0.5 * t, 0.8660254037844386467637231707529362 * t};  // sqrt(3)/2
}

template <class S>
Eigen::Vector2d to_euclidean(const Vec2<S>& p) {
  return to_euclidean(ScalarOps<S>::to_double(p.s), ScalarOps<S>::to_double(p.t));
}

/// Truncated ternary encoding (sheared coordinates), digit 1 adds lambda^k on
/// s, digit 2 on t; first digit most significant.
template <class S>
Vec2<S> encode_value(const IFS2D<S>& f, int n, std::uint64_t idx) {
  Vec2<S> v{f.zero(), f.zero()};
  S power = f.one();
  for (int k = 1; k <= n; ++k) {
    power = power * f.lambda;
    int digit = int((idx / int_pow(3, n - k)) % 3);
    if (digit == 1) v.s = v.s + power;
    if (digit == 2) v.t = v.t + power;
  }
  return v;
}

/// T^n delta_0 for the 2D system, consolidated (outer-sum recursion as in 1D).
template <class S>
AtomicMeasure<Vec2<S>> node_measure2d(const IFS2D<S>& f, int n) {
  f.check_budget(n, "node_measure2d");
  std::vector<WeightedAtom<Vec2<S>>> atoms{{{f.zero(), f.zero()}, Rational(1)}};
  AtomicMeasure<Vec2<S>> cur(std::move(atoms), true);
  S power = f.one();
  Rational third(1, 3);
  for (int k = 1; k <= n; ++k) {
    power = power * f.lambda;
    std::vector<WeightedAtom<Vec2<S>>> next;
    next.reserve(cur.size() * 3);
    for (const auto& a : cur.atoms()) {
      next.push_back({a.point, a.weight * third});
      next.push_back({{a.point.s + power, a.point.t}, a.weight * third});
      next.push_back({{a.point.s, a.point.t + power}, a.weight * third});
    }
    cur = AtomicMeasure<Vec2<S>>(std::move(next)).consolidate(f.eps);
  }
  return cur;
}

using PlanarFn = std::function<double(const Eigen::Vector2d&)>;

/// (V f)(w) = f(pi_n(w)) for the ternary system.
template <class S>
CylinderFn dilation_embed(const IFS2D<S>& f, const PlanarFn& fn, int n) {
  f.check_budget(n, "dilation_embed");
  CylinderFn out{3, n, 0, {}};
  std::uint64_t dim = int_pow(3, n);
  out.v = Eigen::VectorXd(long(dim));
  for (std::uint64_t idx = 0; idx < dim; ++idx)
    out.v[long(idx)] = fn(to_euclidean(encode_value(f, n, idx)));
  return out;
}

template <class S>
std::pair<double, double> dilation_isometry_pair(const IFS2D<S>& f, const PlanarFn& fn,
                                                 int n) {
  CylinderFn vf = dilation_embed(f, fn, n);
  double lhs = inner(vf, vf);
  double rhs = 0.0;
  AtomicMeasure<Vec2<S>> mu = node_measure2d(f, n);
  for (const auto& a : mu.atoms()) {
    double val = fn(to_euclidean(a.point));
    rhs += a.weight.to_double() * val * val;
  }
  return {lhs, rhs};
}

/// Minimality residual for the ternary system; see the binary version.
template <class S>
double minimality_density_check(const IFS2D<S>& f, int n,
                                const std::vector<PlanarFn>& family_in = {}) {
  std::vector<PlanarFn> family = family_in;
  if (family.empty()) family.push_back([](const Eigen::Vector2d&) { return 1.0; });
  std::uint64_t dim = int_pow(3, n);
  if (dim > (std::uint64_t(1) << 20)) throw BudgetError("minimality level too deep");
  auto embed = [&](int level) {
    std::vector<CylinderFn> out;
    out.reserve(family.size());
    for (const auto& e : family) out.push_back(dilation_embed(f, e, level));
    return out;
  };
  return detail::span_residual(detail::s_word_span(3, n, embed), dim);
}

/// max_i || V(F_i f) - S_i^* V f ||_P for the ternary system.
template <class S>
double intertwining_check(const IFS2D<S>& f, const std::vector<PlanarFn>& fns, int n) {
  double worst = 0.0;
  std::uint64_t dim = int_pow(3, n);
  for (const auto& fn : fns) {
    CylinderFn vf = dilation_embed(f, fn, n + 1);
    for (int i = 0; i < 3; ++i) {
      CylinderFn rhs = shift_adjoint_apply(i, vf);
      CylinderFn lhs{3, n, -1, {}};
      lhs.v = Eigen::VectorXd(long(dim));
      for (std::uint64_t idx = 0; idx < dim; ++idx) {
        Vec2<S> x = encode_value(f, n, idx);
        lhs.v[long(idx)] = fn(to_euclidean(f.tau(i, x)));
      }
      CylinderFn diff = lhs;
      diff.v -= rhs.v;
      worst = std::max(worst, norm(diff));
    }
  }
  return worst;
}

}  // namespace ifs
