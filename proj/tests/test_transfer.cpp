#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "overlap_ifs/transfer.hpp"

using namespace ifs;

namespace {

constexpr double kGolden = 0.6180339887498949;

IFS1D<Quadratic> golden_ifs() {
  return IFS1D<Quadratic>(QuadraticField::golden().root());
}

AtomicMeasure<double> quad_measure(double lambda, int n) {
  IFS1D<double> f(lambda);
  return node_measure(node_set(f, n));
}

AtomicMeasure<double> golden_quad_measure(int n) {
  auto f = golden_ifs();
  return to_float(node_measure(node_set(f, n)));
}

}  // namespace

TEST_CASE("rn_eval off-overlap pieces are exact") {
  auto rn = make_rn_pair(golden_ifs(), 10);
  double lam = kGolden;
  CHECK(rn.phi0(lam / 2) == 2.0);
  CHECK(rn.phi1(lam / 2) == 0.0);
  // above the overlap (overlap_hi = 1 at golden)
  CHECK(rn.phi0(1.2) == 0.0);
  CHECK(rn.phi1(1.2) == 2.0);
  CHECK_THROWS_AS(rn.phi0.eval(-0.5), std::domain_error);
  CHECK_THROWS_AS(rn.phi0.eval(rn.b() + 0.5), std::domain_error);
}

TEST_CASE("rn_eval carries depth and boundary flag") {
  auto rn = make_rn_derivative(golden_ifs(), 0, 12);
  auto v = rn.eval(kGolden + 1e-15);
  CHECK(v.depth == 12);
  CHECK(v.near_boundary);
  auto w = rn.eval(0.3);
  CHECK(!w.near_boundary);
}

TEST_CASE("rn golden midpoint: both derivatives near 1") {
  auto rn = make_rn_pair(golden_ifs(), 20);
  double mid = rn.b() / 2.0;
  CHECK(std::abs(rn.phi0(mid) - 1.0) <= 0.02);
  CHECK(std::abs(rn.phi1(mid) - 1.0) <= 0.02);
}

TEST_CASE("rn sum: phi0 + phi1 = 2 within 0.01 on a 1000-point grid (golden n=18)") {
  auto rn = make_rn_pair(golden_ifs(), 18);
  CHECK(rn_sum_check(rn, 1000) <= 0.01);
}

TEST_CASE("rn sum: exactly zero off the overlap") {
  auto rn = make_rn_pair(golden_ifs(), 8);
  for (double x : {0.0, 0.1, 0.3, 0.55}) {
    CHECK(rn.phi0(x) + rn.phi1(x) == 2.0);  // below overlap_lo = lambda
  }
  for (double x : {1.05, 1.3, 1.55}) {
    CHECK(rn.phi0(x) + rn.phi1(x) == 2.0);  // above overlap_hi = 1
  }
}

TEST_CASE("apply_adjoint: wrong-branch region vanishes") {
  auto rn = make_rn_pair(golden_ifs(), 10);
  auto one = [](double) { return 1.0; };
  auto a1 = apply_adjoint(rn, 1, one);
  for (double x : {0.0, 0.2, 0.4, 0.6}) CHECK(a1(x) == 0.0);  // x < lambda
}

TEST_CASE("apply_adjoint composed with the isometry is the multiplication operator") {
  // F_i^* F_i f = (1/2) phi_i f, all lambda; sharp for the disjoint case
  for (double lam : {0.3, 0.75}) {
    IFS1D<double> f(lam);
    auto rn = make_rn_pair(f, 14);
    auto quad = quad_measure(lam, 10);
    auto g = [](double x) { return 1.0 + 0.5 * x - 0.25 * x * x; };
    for (int i = 0; i < 2; ++i) {
      RealFn fi_g = apply_isometry_branch(lam, i, g);
      RealFn fstar_fi_g = apply_adjoint(rn, i, fi_g);
      const RnDerivative& phi = i == 0 ? rn.phi0 : rn.phi1;
      for (const auto& a : quad.atoms()) {
        double x = a.point;
        double expect = 0.5 * phi(x) * g(x);
        CHECK(fstar_fi_g(x) == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("column isometry at atomic level: exact transport of norms") {
  // (1/2) sum_i ||f o tau_i||^2_{mu_n} = ||f||^2_{mu_{n+1}}
  for (double lam : {0.55, kGolden, 0.75}) {
    IFS1D<double> f(lam);
    auto g = [](double x) { return std::cos(x) + 0.3 * x; };
    for (int n : {4, 9}) {
      auto mu_n = quad_measure(lam, n);
      auto mu_n1 = quad_measure(lam, n + 1);
      double lhs = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (const auto& a : mu_n.atoms()) {
          double v = g(lam * (a.point + double(i)));
          lhs += 0.5 * a.weight.to_double() * v * v;
        }
      }
      double rhs = norm2_sq(g, mu_n1);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("golden: adjoint-pair pairing reproduces the unit norm") {
  auto rn = make_rn_pair(golden_ifs(), 18);
  auto quad = golden_quad_measure(14);
  auto one = [](double) { return 1.0; };
  // <F_0^* F_0 1 + F_1^* F_1 1, 1> = (1/2) integral (phi_0 + phi_1) dmu ~ 1
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    RealFn term = apply_adjoint(rn, i, apply_isometry_branch(kGolden, i, one));
    for (const auto& a : quad.atoms()) acc += a.weight.to_double() * term(a.point);
  }
  CHECK(std::abs(acc - 1.0) <= 0.02);
}

TEST_CASE("lebesgue reference densities do not form a column isometry") {
  // with mu = Lebesgue on [0,b] the analogous norm identity fails by > 0.01
  double lam = 0.75, b = lam / (1 - lam);
  auto g = [](double x) { return x; };
  int N = 20000;
  double h = b / N;
  auto integral = [&](const std::function<double(double)>& fn) {
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
      double x = (i + 0.5) * h;
      acc += fn(x) * h;
    }
    return acc / b;  // normalized Lebesgue
  };
  double lhs = 0.5 * (integral([&](double x) {
                 double v = g(lam * x);
                 return v * v;
               }) +
                      integral([&](double x) {
                        double v = g(lam * (x + 1));
                        return v * v;
                      }));
  double rhs = integral([&](double x) { return g(x) * g(x); });
  CHECK(std::abs(lhs - rhs) > 0.01);
}

TEST_CASE("range projection annihilates the defect vector identically") {
  for (int depth : {8, 18}) {
    auto rn = make_rn_pair(golden_ifs(), depth);
    RangeProjection proj(rn);
    FnPair dv = overlap_defect_vector(rn);
    auto quad = golden_quad_measure(12);
    double dnorm = std::sqrt(norm2_sq(dv, quad));
    CHECK(dnorm > 0.1);  // genuinely nonzero for overlapping lambda
    FnPair img = proj.apply(dv);
    double residual = std::sqrt(norm2_sq(img, quad));
    CHECK(residual / dnorm <= 0.02);
    CHECK(residual == 0.0);  // the cancellation is pointwise, not approximate
  }
}

TEST_CASE("defect vector dichotomy: zero without overlap, bounded below with") {
  IFS1D<double> low(0.3);
  auto rn_low = make_rn_pair(low, 10);
  FnPair dv_low = overlap_defect_vector(rn_low);
  auto quad_low = quad_measure(0.3, 10);
  CHECK(norm2_sq(dv_low, quad_low) == 0.0);

  for (int n : {10, 12, 14}) {
    auto rn = make_rn_pair(golden_ifs(), n);
    FnPair dv = overlap_defect_vector(rn);
    auto quad = golden_quad_measure(n);
    CHECK(std::sqrt(norm2_sq(dv, quad)) >= 0.5);
  }
}

TEST_CASE("range projection is the identity in the disjoint case") {
  IFS1D<double> f(0.3);
  auto rn = make_rn_pair(f, 10);
  RangeProjection proj(rn);
  auto quad = quad_measure(0.3, 9);
  auto fns = random_polynomials(4, rn.b(), 99);
  FnPair p{fns[0], fns[1]};
  FnPair img = proj.apply(p);
  CHECK(pair_distance(img, p, quad) <= 1e-12);
}

TEST_CASE("projection idempotency defect") {
  auto rn = make_rn_pair(golden_ifs(), 18);
  auto quad = golden_quad_measure(12);
  CHECK(projection_identity_check(rn, quad, 32, 20240601) <= 0.05);

  IFS1D<double> low(0.3);
  auto rn_low = make_rn_pair(low, 12);
  auto quad_low = quad_measure(0.3, 10);
  CHECK(projection_identity_check(rn_low, quad_low, 16, 3) <= 1e-12);
}

TEST_CASE("projection application is homogeneous") {
  auto rn = make_rn_pair(golden_ifs(), 10);
  RangeProjection proj(rn);
  auto quad = golden_quad_measure(10);
  auto fns = random_polynomials(2, rn.b(), 12345);
  FnPair p{fns[0], fns[1]};
  FnPair p2{[&](double x) { return 2.0 * fns[0](x); },
            [&](double x) { return 2.0 * fns[1](x); }};
  FnPair zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
  FnPair img = proj.apply(p);
  FnPair img2 = proj.apply(p2);
  FnPair img0 = proj.apply(zero);
  for (const auto& a : quad.atoms()) {
    CHECK(img2.c0(a.point) == doctest::Approx(2.0 * img.c0(a.point)).epsilon(1e-13));
    CHECK(img2.c1(a.point) == doctest::Approx(2.0 * img.c1(a.point)).epsilon(1e-13));
    CHECK(img0.c0(a.point) == 0.0);
    CHECK(img0.c1(a.point) == 0.0);
  }
}

TEST_CASE("sampled pairs mirror the functional route") {
  auto rn = make_rn_pair(golden_ifs(), 12);
  auto quad = golden_quad_measure(10);
  auto fns = random_polynomials(2, rn.b(), 5);
  FnPair p{fns[0], fns[1]};
  SampledFunctionPair sp(quad, p);
  CHECK(sp.f0.size() == long(quad.size()));
  CHECK(sp.norm() == doctest::Approx(std::sqrt(norm2_sq(p, quad))).epsilon(1e-14));
  RangeProjection proj(rn);
  SampledFunctionPair img = proj.apply(sp, p);
  FnPair img_fn = proj.apply(p);
  for (size_t i = 0; i < quad.size(); ++i) {
    double x = quad.atoms()[i].point;
    CHECK(img.f0[long(i)] == img_fn.c0(x));
    CHECK(img.f1[long(i)] == img_fn.c1(x));
  }
}

TEST_CASE("rn derivatives for lambda below 1/2 are branch indicators") {
  IFS1D<double> f(0.3);
  auto rn = make_rn_pair(f, 8);
  double hi0 = 0.3 * 0.3 / 0.7;  // tau_0(X) = [0, 9/70], gap to tau_1(X) = [0.3, 3/7]
  CHECK(rn.phi0(hi0 / 2) == 2.0);
  CHECK(rn.phi1(hi0 / 2) == 0.0);
  CHECK(rn.phi0(0.2) == 0.0);  // in the gap
  CHECK(rn.phi1(0.2) == 0.0);
  CHECK(rn.phi0(0.35) == 0.0);
  CHECK(rn.phi1(0.35) == 2.0);  // tau_1(X) = [0.3, b]
}
