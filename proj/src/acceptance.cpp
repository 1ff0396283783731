#include "overlap_ifs/acceptance.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "overlap_ifs/cuntz.hpp"
#include "overlap_ifs/ifs2d.hpp"
#include "overlap_ifs/overlap1d.hpp"
#include "overlap_ifs/render.hpp"
#include "overlap_ifs/transfer.hpp"

namespace ifs::acceptance {

namespace {

constexpr double kGolden = 0.6180339887498949;

int thread_count() {
  if (const char* env = std::getenv("OVERLAP_IFS_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

IFS1D<Quadratic> golden1d(int budget = 24) {
  IFS1D<Quadratic> f(QuadraticField::golden().root());
  f.budget = budget;
  return f;
}

IFS2D<Quadratic> golden2d() {
  return IFS2D<Quadratic>(QuadraticField::golden().root());
}

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << "FAILED: " << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

// stratified Monte Carlo moments, deterministic for any thread count
struct McResult {
  double m[4] = {0, 0, 0, 0};
  double se[4] = {0, 0, 0, 0};
};

McResult mc_moments(double lambda, long samples, unsigned seed) {
  const int strata = 64;
  long per = samples / strata;
  std::vector<std::array<double, 8>> acc(strata);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int s = next.fetch_add(1); s < strata; s = next.fetch_add(1)) {
      std::mt19937_64 rng(seed * 1000003u + unsigned(s));
      std::array<double, 8> a{};
      for (long i = 0; i < per; ++i) {
        std::uint64_t bits = rng();
        double x = 0.0;
        for (int k = 60; k >= 1; --k) x = lambda * (x + double((bits >> (k % 60)) & 1));
        double x2 = x * x, x3 = x2 * x;
        a[0] += x;
        a[1] += x2;
        a[2] += x3;
        a[3] += x2;       // for variance of m1
        a[4] += x2 * x2;  // of m2
        a[5] += x3 * x3;  // of m3
      }
      acc[s] = a;
    }
  };
  int nt = std::min(thread_count(), strata);
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::array<double, 8> tot{};
  for (const auto& a : acc)
    for (int i = 0; i < 8; ++i) tot[i] += a[i];
  double n = double(per) * strata;
  McResult r;
  r.m[1] = tot[0] / n;
  r.m[2] = tot[1] / n;
  r.m[3] = tot[2] / n;
  r.se[1] = std::sqrt((tot[3] / n - r.m[1] * r.m[1]) / n);
  r.se[2] = std::sqrt((tot[4] / n - r.m[2] * r.m[2]) / n);
  r.se[3] = std::sqrt((tot[5] / n - r.m[3] * r.m[3]) / n);
  return r;
}

// ---- criteria ----

CriterionResult c1_golden_overlap() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  auto f = golden1d();
  auto b20 = overlap_enclosure(f, 20);
  c.require(b20.contains(1.0 / 3.0), "n=20 enclosure contains 1/3");
  c.require(b20.width() <= 0.05, "n=20 width <= 0.05 (got " + fmt(b20.width()) + ")");
  auto b24 = overlap_enclosure(f, 24);
  c.require(b24.contains(1.0 / 3.0), "n=24 enclosure contains 1/3");
  c.require(b24.width() <= 0.02, "n=24 width <= 0.02 (got " + fmt(b24.width()) + ")");
  auto t20 = branch_measure_enclosure(f, 20);
  c.require(t20.contains(2.0 / 3.0), "mu(tau_1 X) enclosure contains 2/3");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs <= 60.0, "runtime <= 60 s");
  c.note("n=20 [" + fmt(b20.lo) + "," + fmt(b20.hi) + "], n=24 width " + fmt(b24.width()) +
         ", runtime " + fmt(secs, 3) + " s");
  return {"C1", "golden-1d-overlap", c.pass, c.detail.str()};
}

CriterionResult c2_lower_bounds() {
  Check c;
  {
    auto f = golden1d();
    auto lb = overlap_lower_bound(f);
    c.require(lb.bound == Rational(1, 3) && lb.m == 2, "golden bound 1/3 with m=2");
    // exact-mode equality at m=2: lambda + lambda^2 = 1
    c.require(f.lambda + f.lambda * f.lambda == f.one(), "golden partial-sum equality is exact");
    auto b = overlap_enclosure(f, 22);
    c.require(b.hi >= 1.0 / 3.0, "golden enclosure hi >= 1/3 at n=22");
  }
  for (double lam : {0.7, 0.8, 0.9}) {
    IFS1D<double> f(lam);
    c.require(overlap_lower_bound(f).bound == Rational(1, 3),
              "bound 1/3 at lambda=" + fmt(lam));
    auto b = overlap_enclosure(f, 22);
    c.require(b.hi >= 1.0 / 3.0, "enclosure hi >= bound at lambda=" + fmt(lam));
  }
  {
    IFS1D<double> f(0.55);
    auto lb = overlap_lower_bound(f);
    c.require(lb.m == 3 && lb.bound == Rational(1, 7), "lambda=0.55: m=3, bound 1/7");
    c.require(overlap_enclosure(f, 22).hi >= lb.bound.to_double(),
              "enclosure hi >= 1/7 at 0.55");
  }
  {
    IFS1D<double> f(0.52);
    auto lb = overlap_lower_bound(f);
    c.require(lb.m == 4 && lb.bound == Rational(1, 15), "lambda=0.52: m=4, bound 1/15");
    c.require(overlap_enclosure(f, 22).hi >= lb.bound.to_double(),
              "enclosure hi >= 1/15 at 0.52");
  }
  return {"C2", "overlap-lower-bounds", c.pass, c.detail.str()};
}

CriterionResult c3_node_multiplicity() {
  Check c;
  auto f = golden1d();
  auto n3 = node_set(f, 3);
  int doubled = 0;
  for (auto& [v, m] : n3.entries) doubled += m == 2;
  c.require(n3.distinct_count() == 7, "#N_3 = 7 in exact golden mode");
  c.require(doubled == 1, "one multiplicity-2 node at n=3");
  for (int n = 3; n <= 16; ++n)
    c.require(node_set(f, n).distinct_count() < (std::uint64_t(1) << n),
              "#N_n < 2^n at n=" + std::to_string(n));
  IFS1D<double> g(0.6);
  c.require(node_set(g, 3).distinct_count() == 8, "float lambda=0.6: #N_3 = 8");
  return {"C3", "node-multiplicity", c.pass, c.detail.str()};
}

template <class S>
void cascade_props_for(Check& c, const IFS1D<S>& f, const std::string& tag) {
  double lam = ScalarOps<S>::to_double(f.lambda);
  double b = lam / (1.0 - lam);
  const int grid_n = 4096;
  std::vector<StepFunction<double>> F;
  for (int n = 0; n <= 17; ++n) F.push_back(cascade_cdf(f, n).to_float());
  // monotone on all breakpoints, support pinned
  for (int n = 1; n <= 16; ++n) {
    bool mono = true;
    for (double x : F[n].breakpoints())
      if (F[n].eval(x) > F[n - 1].eval(x) + 1e-15) mono = false;
    for (double x : F[n - 1].breakpoints())
      if (F[n].eval(x) > F[n - 1].eval(x) + 1e-15) mono = false;
    c.require(mono, tag + ": F_" + std::to_string(n) + " <= F_" + std::to_string(n - 1));
    c.require(F[n].eval(b * (1 + 1e-9) + 1e-9) == 1.0, tag + ": F_n = 1 beyond b");
    c.require(F[n].eval(-1e-12) == 0.0, tag + ": F_n = 0 below 0");
  }
  // scaling-identity residual on the 4096-point grid
  double prev_res = 1e9;
  double res16 = 0.0;
  for (int n = 1; n <= 16; ++n) {
    double worst = 0.0;
    for (int i = 0; i < grid_n; ++i) {
      double x = b * double(i) / double(grid_n - 1);
      double refined = 0.5 * (F[n].eval(x / lam) + F[n].eval((x - lam) / lam));
      worst = std::max(worst, std::abs(F[n].eval(x) - refined));
    }
    c.require(worst <= prev_res + 1e-15,
              tag + ": residual nonincreasing at n=" + std::to_string(n));
    prev_res = worst;
    if (n == 16) res16 = worst;
  }
  c.require(res16 <= std::ldexp(1.0, -14),
            tag + ": residual(16) <= 2^-14 (got " + fmt(res16, 3) + ")");
}

CriterionResult c4_cascade_properties() {
  Check c;
  cascade_props_for(c, IFS1D<double>(0.55), "0.55");
  cascade_props_for(c, golden1d(), "golden");
  cascade_props_for(c, IFS1D<double>(0.75), "0.75");
  return {"C4", "cascade-properties", c.pass, c.detail.str()};
}

CriterionResult c5_symmetry() {
  Check c;
  auto g = golden1d();
  for (int n = 1; n <= 14; ++n)
    c.require(symmetry_defect(g, n) == 0.0,
              "golden exact defect 0 at n=" + std::to_string(n));
  for (double lam : {0.55, 0.75}) {
    IFS1D<double> f(lam);
    for (int n = 1; n <= 14; ++n)
      c.require(symmetry_defect(f, n) <= 1e-12,
                "float defect <= 1e-12 at lambda=" + fmt(lam) + ", n=" + std::to_string(n));
  }
  return {"C5", "cascade-symmetry", c.pass, c.detail.str()};
}

CriterionResult c6_moments() {
  Check c;
  for (int i = 1; i <= 20; ++i) {
    double l = 0.04 * i + 0.04;  // 0.08 .. 0.84
    IFS1D<double> f(l);
    auto m = moments(f, 2);
    double m1c = l / (2.0 * (1.0 - l));
    double m2c = l * l / (2.0 * (1.0 - l) * (1.0 - l) * (1.0 + l));
    c.require(std::abs(m[1] - m1c) <= 1e-12 * std::max(1.0, m1c), "M1 closed form at " + fmt(l));
    c.require(std::abs(m[2] - m2c) <= 1e-12 * std::max(1.0, m2c), "M2 closed form at " + fmt(l));
  }
  {
    // exact rational half: M2 = 1/3 exactly
    IFS1D<Quadratic> h(QuadraticField::intern(Rational(1, 2)).root());
    auto m2 = moment(h, 2);
    c.require(m2 == h.lambda.field()->from_rational(Rational(1, 3)), "M2(1/2) = 1/3 exactly");
  }
  for (double lam : {0.55, kGolden, 0.75}) {
    auto mc = mc_moments(lam, 10000000, 20240601);
    IFS1D<double> f(lam);
    auto m = moments(f, 3);
    c.require(std::abs(m[1] - mc.m[1]) <= 3.0 * mc.se[1],
              "MC M1 within 3 SE at lambda=" + fmt(lam));
    c.require(std::abs(m[2] - mc.m[2]) <= 3.0 * mc.se[2],
              "MC M2 within 3 SE at lambda=" + fmt(lam));
    c.require(std::abs(m[3] - mc.m[3]) <= 3.0 * mc.se[3],
              "MC M3 (recursion) within 3 SE at lambda=" + fmt(lam));
  }
  // the displayed M3 was validated against the recursion and the MC oracle:
  // it fails at lambda=1/2 (3/14 instead of the Lebesgue value 1/4) and is
  // replaced by the corrected numerator (2 + l + l^2 - l^3); checked here.
  auto corrected = [](double l) {
    return l * l * l * (2.0 + l + l * l - l * l * l) /
           (4.0 * (1.0 - l * l * l) * (1.0 - l * l) * (1.0 - l));
  };
  auto displayed = [](double l) {
    return l * l * l * (l + 2.0 * (1.0 - l * l + l * l * l)) /
           (4.0 * (1.0 - l * l * l) * (1.0 - l * l) * (1.0 - l));
  };
  for (int i = 1; i <= 15; ++i) {
    double l = 0.05 * i + 0.05;
    IFS1D<double> f(l);
    c.require(std::abs(moment(f, 3) - corrected(l)) <= 1e-10 * std::max(1.0, corrected(l)),
              "corrected M3 closed form at " + fmt(l));
  }
  c.require(std::abs(displayed(0.5) - 0.25) > 0.03,
            "displayed M3 demonstrably differs from the Lebesgue value at 1/2");
  c.note("displayed M3 rejected (typo), corrected closed form in force");
  return {"C6", "moments", c.pass, c.detail.str()};
}

CriterionResult c7_char_fn() {
  Check c;
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double t = -50.0 + 0.1 * i;
    auto v = char_fn(0.5, t, 40);
    std::complex<double> expect =
        t == 0.0 ? std::complex<double>(1.0, 0.0)
                 : std::polar(1.0, t / 2.0) * (std::sin(t / 2.0) / (t / 2.0));
    worst = std::max(worst, std::abs(v.value - expect));
  }
  c.require(worst <= 1e-9, "truncated product matches the Lebesgue transform (worst " +
                               fmt(worst, 3) + ")");
  return {"C7", "characteristic-function", c.pass, c.detail.str()};
}

CriterionResult c8_radon_nikodym() {
  Check c;
  auto rn = make_rn_pair(golden1d(), 18);
  // exactly 2 off the overlap
  for (double x : {0.0, 0.3, 0.55, 1.05, 1.45})
    c.require(rn.phi0(x) + rn.phi1(x) == 2.0, "phi sum exact off overlap at x=" + fmt(x));
  double on = rn_sum_check(rn, 1000);
  c.require(on <= 0.01, "phi sum within 0.01 on the overlap (got " + fmt(on, 3) + ")");

  auto quad = to_float(node_measure(node_set(golden1d(), 14)));
  FnPair dv = overlap_defect_vector(rn);
  RangeProjection proj(rn);
  double dnorm = std::sqrt(norm2_sq(dv, quad));
  double residual = std::sqrt(norm2_sq(proj.apply(dv), quad));
  c.require(dnorm > 0.0, "defect vector nonzero at golden");
  c.require(residual / dnorm <= 0.02,
            "projection residual <= 0.02 (got " + fmt(residual / dnorm, 3) + ")");

  IFS1D<double> low(0.3);
  auto rn_low = make_rn_pair(low, 12);
  auto quad_low = node_measure(node_set(low, 10));
  FnPair dv_low = overlap_defect_vector(rn_low);
  c.require(norm2_sq(dv_low, quad_low) == 0.0, "defect vector identically 0 at lambda=0.3");
  c.require(projection_identity_check(rn_low, quad_low, 16, 7) <= 1e-12,
            "projection idempotent to 1e-12 at lambda=0.3");
  return {"C8", "radon-nikodym", c.pass, c.detail.str()};
}

CriterionResult c9_cuntz_suite() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int N : {2, 3}) {
    for (int n = 0; n <= 10; ++n) {
      if (int_pow(N, n + 1) > 200000) continue;
      CylinderFn psi{N, n, 0, {}};
      psi.v = Eigen::VectorXd::NullaryExpr(long(int_pow(N, n)),
                                           [&](Eigen::Index) { return u(rng); });
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          CylinderFn out = shift_adjoint_apply(i, shift_isometry_apply(j, psi));
          bool ok = out.half_exp == psi.half_exp &&
                    (i == j ? out.v == psi.v
                            : out.v == Eigen::VectorXd::Zero(psi.v.size()));
          c.require(ok, "S_i* S_j identity at N=" + std::to_string(N) +
                            ", n=" + std::to_string(n));
        }
      }
      if (n >= 1) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(psi.v.size());
        for (int i = 0; i < N; ++i)
          acc += shift_isometry_apply(i, shift_adjoint_apply(i, psi)).v;
        c.require(acc == psi.v, "sum S_i S_i* identity at N=" + std::to_string(N) +
                                    ", n=" + std::to_string(n));
      }
    }
  }
  {
    IFS1D<double> f(0.73);
    std::vector<std::function<double(double)>> fns{
        [](double) { return 1.0; }, [](double x) { return x; },
        [](double x) { return 0.25 * x * x * x - 0.5 * x + 1.0; }};
    double defect = intertwining_check(f, fns, 10);
    c.require(defect <= 1e-14, "intertwining defect <= 1e-14 at n=10 (got " +
                                   fmt(defect, 3) + ")");
    c.require(intertwining_check(golden1d(), fns, 8) == 0.0,
              "intertwining exactly 0 in exact mode");
  }
  {
    auto f = golden1d();
    auto fn = [](double x) { return 1.0 + 0.5 * x - 0.125 * x * x; };
    auto [lhs, rhs] = dilation_isometry_pair(f, fn, 10);
    c.require(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, rhs), "dilation isometry exact");
  }
  for (int n = 0; n <= 4; ++n)
    c.require(minimality_density_check(golden1d(), n) <= 1e-10,
              "minimality residual 0 (N=2, n=" + std::to_string(n) + ")");
  for (int n = 0; n <= 3; ++n)
    c.require(minimality_density_check(IFS2D<double>(0.6), n) <= 1e-10,
              "minimality residual 0 (N=3, n=" + std::to_string(n) + ")");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs <= 10.0, "runtime <= 10 s (got " + fmt(secs, 3) + ")");
  c.note("runtime " + fmt(secs, 3) + " s");
  return {"C9", "cuntz-symbolic-suite", c.pass, c.detail.str()};
}

CriterionResult c10_golden_2d_values() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  auto f = golden2d();
  auto r = fractal_measures2d(f, 12);
  const MeasureBound& b1 = r.branch[1];
  const MeasureBound& ov = r.pair01;
  c.require(b1.width() <= 0.03, "mu(tau_1 X) width <= 0.03 (got " + fmt(b1.width(), 3) + ")");
  c.require(ov.width() <= 0.03, "mu(OV_01) width <= 0.03 (got " + fmt(ov.width(), 3) + ")");
  double ilo = 3.0 * b1.lo - 3.0 * ov.hi;
  double ihi = 3.0 * b1.hi - 3.0 * ov.lo;
  c.require(ilo <= 1.0 && 1.0 <= ihi,
            "identity 3 mu(tau_1 X) - 3 mu(OV_01) encloses 1 ([" + fmt(ilo) + "," + fmt(ihi) + "])");
  // the literature targets; certified enclosures exclude them (see NOTE)
  c.require(b1.contains(3.0 / 8.0),
            "enclosure contains 3/8 (certified interval [" + fmt(b1.lo) + "," + fmt(b1.hi) + "])");
  c.require(ov.contains(1.0 / 24.0),
            "enclosure contains 1/24 (certified interval [" + fmt(ov.lo) + "," + fmt(ov.hi) + "])");
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs <= 120.0, "runtime <= 120 s");
  c.note("NOTE: exact witness counting PROVES mu(tau_1 X) >= " + fmt(b1.lo) +
         " > 3/8 and mu(OV_01) >= " + fmt(ov.lo) +
         " > 1/24: the classical family count is a strict lower bound, not the value"
         " (both enclosures are consistent with 3/7 and 2/21); runtime " +
         fmt(secs, 3) + " s");
  return {"C10", "golden-2d-measures", c.pass, c.detail.str()};
}

CriterionResult c11_2d_regimes() {
  Check c;
  for (double lam : {0.52, 0.55, 0.60, kGolden, 0.63, 0.65, 2.0 / 3.0, 0.70, 0.80}) {
    IFS2D<double> f(lam);
    auto direct = classify_regime(f);
    auto via_chain = regime_from_chain(f, chain_intersection(f, 1));
    c.require(direct.regime == via_chain.regime && direct.in_taxonomy == via_chain.in_taxonomy,
              "classification agreement at lambda=" + fmt(lam));
  }
  {
    auto f = golden2d();
    auto chain = chain_intersection(f, 1);
    c.require(chain.kind == ChainReport<Quadratic>::Kind::VertexContacts,
              "golden chain is vertex contacts");
    auto ov1 = overlap_level(f, 1);
    auto ov2 = overlap_level(f, 2);
    for (const auto& t1 : ov1.triangles) {
      std::vector<int> sharers;
      for (const auto& v : t1.vertices()) {
        int cnt = 0;
        for (const auto& t2 : ov2.triangles)
          for (const auto& w : t2.vertices())
            if (PointOps<Vec2<Quadratic>>::compare(v, w, 0.0) == 0) ++cnt;
        sharers.push_back(cnt);
      }
      std::sort(sharers.begin(), sharers.end());
      c.require(sharers == std::vector<int>{1, 1, 2},
                "golden one-or-two vertex sharing pattern");
    }
  }
  {
    double prev = 1e9;
    for (double lam : {0.51, 0.54, 0.57, 0.60, 0.63, 0.66}) {
      auto g = gap_region(IFS2D<double>(lam));
      c.require(bool(g), "gap exists at lambda=" + fmt(lam));
      if (g) {
        c.require(g->side() < prev, "gap side strictly decreasing at lambda=" + fmt(lam));
        prev = g->side();
      }
    }
    IFS2D<Quadratic> exact23(QuadraticField::intern(Rational(2, 3)).root());
    DownTriangle<Quadratic> raw{exact23.lambda, exact23.lambda,
                                exact23.lambda * exact23.support_end()};
    c.require(raw.side().is_zero(), "gap side exactly 0 at lambda = 2/3");
    c.require(!gap_region(exact23), "no gap region at lambda = 2/3");
  }
  for (double lam : {0.52, 0.55, 0.60, kGolden, 0.63, 0.65})
    c.require(triple_overlap_empty(IFS2D<double>(lam)),
              "triple overlap empty at lambda=" + fmt(lam));
  return {"C11", "2d-regimes", c.pass, c.detail.str()};
}

CriterionResult c12_render_determinism() {
  Check c;
  auto scene = build_scene(golden2d(), 2, RenderLayers{});
  std::ostringstream a, b;
  write_svg(a, scene);
  write_svg(b, scene);
  c.require(a.str() == b.str(), "repeated renders byte-identical");
  std::string svg = a.str();
  auto group = svg.find("id=\"overlaps\"");
  size_t count = 0;
  for (size_t pos = group; (pos = svg.find("<polygon", pos + 1)) != std::string::npos;)
    ++count;
  c.require(group != std::string::npos && count == 9,
            "overlap layer contains exactly 9 dark triangles (got " + std::to_string(count) + ")");
  return {"C12", "render-determinism", c.pass, c.detail.str()};
}

CriterionResult wiener_note() {
  // diagnostic only (no literature-tied threshold): the averaged square
  // modulus decreases in T, consistent with atomlessness
  Check c;
  double w20 = wiener_atom_test(kGolden, 20.0);
  double w200 = wiener_atom_test(kGolden, 200.0);
  c.require(w200 < w20, "wiener average decreasing in T");
  c.note("golden wiener: T=20 -> " + fmt(w20, 4) + ", T=200 -> " + fmt(w200, 4));
  return {"W", "wiener-diagnostic", c.pass, c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& out) {
  std::vector<CriterionResult> results;
  auto run = [&](CriterionResult (*fn)()) {
    CriterionResult r = fn();
    out << (r.pass ? "PASS " : "FAIL ") << r.id << "  " << r.name;
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << "\n";
    out.flush();
    results.push_back(std::move(r));
  };
  run(c1_golden_overlap);
  run(c2_lower_bounds);
  run(c3_node_multiplicity);
  run(c4_cascade_properties);
  run(c5_symmetry);
  run(c6_moments);
  run(c7_char_fn);
  run(c8_radon_nikodym);
  run(c9_cuntz_suite);
  run(c10_golden_2d_values);
  run(c11_2d_regimes);
  run(c12_render_determinism);
  run(wiener_note);
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace ifs::acceptance
