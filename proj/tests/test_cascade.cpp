#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "overlap_ifs/ifs1d.hpp"

using namespace ifs;

namespace {

IFS1D<Quadratic> golden_ifs() {
  return IFS1D<Quadratic>(QuadraticField::golden().root());
}

// all-real-points equality of two step functions: same breakpoints, values
template <class S>
bool step_equal(const StepFunction<S>& f, const StepFunction<S>& g, double eps,
                double val_tol) {
  if (f.breakpoints().size() != g.breakpoints().size()) return false;
  for (size_t i = 0; i < f.breakpoints().size(); ++i)
    if (ScalarOps<S>::compare(f.breakpoints()[i], g.breakpoints()[i], eps) != 0)
      return false;
  for (size_t i = 0; i < f.values().size(); ++i)
    if (std::abs(f.values()[i] - g.values()[i]) > val_tol) return false;
  return true;
}

}  // namespace

TEST_CASE("node_set: two nodes at level 1 for any lambda") {
  IFS1D<double> f(0.7);
  auto ns = node_set(f, 1);
  REQUIRE(ns.entries.size() == 2);
  CHECK(ns.entries[0].first == 0.0);
  CHECK(ns.entries[1].first == doctest::Approx(0.7));
  CHECK(ns.entries[0].second == 1);
  CHECK(ns.entries[1].second == 1);
}

TEST_CASE("node_set: golden level 3 has 7 nodes, one doubled") {
  auto f = golden_ifs();
  auto ns = node_set(f, 3);
  REQUIRE(ns.entries.size() == 7);
  std::uint64_t total = 0;
  int doubled = 0;
  for (auto& [v, m] : ns.entries) {
    total += m;
    if (m == 2) ++doubled;
  }
  CHECK(total == 8);
  CHECK(doubled == 1);
  // the doubled node is lambda = lambda^2 + lambda^3
  Quadratic lam = f.lambda;
  for (auto& [v, m] : ns.entries)
    if (m == 2) CHECK(v == lam);
}

TEST_CASE("node_set: golden distinct counts collapse below 2^n for 3<=n<=16") {
  auto f = golden_ifs();
  for (int n = 3; n <= 16; ++n) {
    auto ns = node_set(f, n);
    CHECK(ns.distinct_count() < (std::uint64_t(1) << n));
    std::uint64_t total = 0;
    for (auto& [v, m] : ns.entries) total += m;
    CHECK(total == (std::uint64_t(1) << n));
  }
}

TEST_CASE("node_set: lambda=0.55 level 3 keeps 8 nodes with order reversal") {
  IFS1D<double> f(0.55);
  auto ns = node_set(f, 3);
  CHECK(ns.entries.size() == 8);
  // lambda > lambda^2 + lambda^3 below the golden ratio
  double l = 0.55;
  CHECK(l > l * l + l * l * l);
  // and 0.6 as required by the float-mode acceptance criterion
  IFS1D<double> g(0.6);
  CHECK(node_set(g, 3).entries.size() == 8);
}

TEST_CASE("node_set matches naive per-word enumeration (oracle)") {
  for (double lam : {0.55, 0.7, 0.75}) {
    IFS1D<double> f(lam);
    for (int n : {1, 4, 9}) {
      auto fast = node_set(f, n);
      auto slow = node_set_naive(f, n);
      REQUIRE(fast.entries.size() == slow.entries.size());
      for (size_t i = 0; i < fast.entries.size(); ++i) {
        CHECK(fast.entries[i].first ==
              doctest::Approx(slow.entries[i].first).epsilon(1e-12));
        CHECK(fast.entries[i].second == slow.entries[i].second);
      }
    }
  }
  auto f = golden_ifs();
  for (int n : {3, 8}) {
    auto fast = node_set(f, n);
    auto slow = node_set_naive(f, n);
    REQUIRE(fast.entries.size() == slow.entries.size());
    for (size_t i = 0; i < fast.entries.size(); ++i) {
      CHECK(fast.entries[i].first == slow.entries[i].first);
      CHECK(fast.entries[i].second == slow.entries[i].second);
    }
  }
}

TEST_CASE("node_set symmetry: multiset invariant under mirroring") {
  for (double lam : {0.55, 0.75}) {
    IFS1D<double> f(lam);
    int n = 10;
    auto ns = node_set(f, n);
    double full = 0.0, p = 1.0;
    for (int k = 1; k <= n; ++k) full += (p *= lam);
    size_t cnt = ns.entries.size();
    for (size_t i = 0; i < cnt; ++i) {
      CHECK(ns.entries[i].first ==
            doctest::Approx(full - ns.entries[cnt - 1 - i].first).epsilon(1e-10));
      CHECK(ns.entries[i].second == ns.entries[cnt - 1 - i].second);
    }
  }
}

TEST_CASE("node_set budget") {
  IFS1D<double> f(0.6);
  f.budget = 10;
  CHECK_THROWS_AS(node_set(f, 11), BudgetError);
  CHECK_THROWS_AS(node_set(f, -1), std::domain_error);
}

TEST_CASE("cascade_cdf: level 0 is Heaviside") {
  IFS1D<double> f(0.75);
  auto F = cascade_cdf(f, 0);
  CHECK(F.eval(-0.5) == 0.0);
  CHECK(F.eval(0.0) == 1.0);
  CHECK(F.jump_count() == 1);
}

TEST_CASE("cascade_cdf: lambda=3/4, F_1(0.5) = 1/2") {
  IFS1D<double> f(0.75);
  auto F = cascade_cdf(f, 1);
  CHECK(F.eval(0.5) == 0.5);
  CHECK(F.eval(-0.01) == 0.0);
  CHECK(F.eval(0.75) == 1.0);
}

TEST_CASE("cascade_cdf: golden level 3 has 7 jumps, one of height 1/4") {
  auto f = golden_ifs();
  auto F = cascade_cdf(f, 3);
  REQUIRE(F.jump_count() == 7);
  int quarter_jumps = 0;
  for (size_t i = 0; i + 1 < F.values().size(); ++i) {
    double h = F.values()[i + 1] - F.values()[i];
    if (h == 0.25) ++quarter_jumps;
  }
  CHECK(quarter_jumps == 1);
  CHECK(F.values().back() == 1.0);
}

TEST_CASE("recursion and node-enumeration CDFs agree at every real point") {
  // float grid
  for (double lam : {0.55, 0.75}) {
    IFS1D<double> f(lam);
    for (int n : {1, 5, 10, 14, 16}) {
      auto rec = cascade_cdf(f, n);
      auto enu = cdf(node_measure(node_set(f, n)));
      CHECK(step_equal(rec, enu, f.eps, 1e-12));
    }
  }
  // exact golden: equality is exact
  auto f = golden_ifs();
  for (int n : {1, 5, 10, 14, 16}) {
    auto rec = cascade_cdf(f, n);
    auto enu = cdf(node_measure(node_set(f, n)));
    CHECK(step_equal(rec, enu, 0.0, 0.0));
  }
}

TEST_CASE("cascade monotone: F_{n+1} <= F_n pointwise") {
  for (double lam : {0.55, 0.6180339887498949, 0.75}) {
    IFS1D<double> f(lam);
    auto prev = cascade_cdf(f, 0);
    for (int n = 1; n <= 12; ++n) {
      auto cur = cascade_cdf(f, n);
      // compare at all breakpoints of both (step functions change only there)
      for (const auto& x : cur.breakpoints()) CHECK(cur.eval(x) <= prev.eval(x) + 1e-15);
      for (const auto& x : prev.breakpoints()) CHECK(cur.eval(x) <= prev.eval(x) + 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("cascade support: F_n = 1 beyond b and 0 below 0") {
  for (double lam : {0.55, 0.75}) {
    IFS1D<double> f(lam);
    double b = lam / (1 - lam);
    for (int n : {1, 6, 12}) {
      auto F = cascade_cdf(f, n);
      CHECK(F.eval(b * (1 + 1e-9)) == 1.0);
      CHECK(F.eval(-1e-12) == 0.0);
    }
  }
}

TEST_CASE("encode_point examples") {
  IFS1D<double> f(0.75);
  auto e = encode_point(f, Word(2, {1, 0, 0}));
  CHECK(e.value == doctest::Approx(0.75));
  CHECK(e.tail == doctest::Approx(1.265625));  // (3/4)^4 / (1/4)

  auto empty = encode_point(f, Word(2, {}));
  CHECK(empty.value == 0.0);
  CHECK(empty.tail == doctest::Approx(3.0));  // b(3/4)

  auto g = golden_ifs();
  auto enc = encode_point(g, Word(2, {0, 1, 1}));
  CHECK(enc.value == g.lambda);  // lambda^2 + lambda^3 = lambda, exactly
}

TEST_CASE("hutchinson_iterate examples") {
  IFS1D<double> f(0.75);
  auto d0 = AtomicMeasure<double>::dirac(0.0);
  auto m0 = hutchinson_iterate(f, d0, 0);
  CHECK(m0.size() == 1);
  CHECK(m0.atoms()[0].point == 0.0);

  auto m2 = hutchinson_iterate(f, d0, 2);
  REQUIRE(m2.size() == 4);
  std::vector<double> expect{0.0, 0.5625, 0.75, 1.3125};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(m2.atoms()[i].point == doctest::Approx(expect[i]));
    CHECK(m2.atoms()[i].weight == Rational(1, 4));
  }

  auto g = golden_ifs();
  auto m3 = hutchinson_iterate(g, AtomicMeasure<Quadratic>::dirac(g.zero()), 3);
  REQUIRE(m3.size() == 7);
  int quarters = 0, eighths = 0;
  for (const auto& a : m3.atoms()) {
    if (a.weight == Rational(1, 4)) ++quarters;
    if (a.weight == Rational(1, 8)) ++eighths;
  }
  CHECK(quarters == 1);
  CHECK(eighths == 6);
}

TEST_CASE("hutchinson equals node measure for dirac start") {
  IFS1D<double> f(0.6);
  auto m = hutchinson_iterate(f, AtomicMeasure<double>::dirac(0.0), 8);
  auto nm = node_measure(node_set(f, 8));
  REQUIRE(m.size() == nm.size());
  for (size_t i = 0; i < m.size(); ++i) {
    CHECK(m.atoms()[i].point == doctest::Approx(nm.atoms()[i].point).epsilon(1e-13));
    CHECK(m.atoms()[i].weight == nm.atoms()[i].weight);
  }
}

TEST_CASE("hutchinson rejects non-probability input") {
  IFS1D<double> f(0.6);
  std::vector<WeightedAtom<double>> atoms{{0.0, Rational(1, 3)}};
  AtomicMeasure<double> half(std::move(atoms), true);
  CHECK_THROWS_AS(hutchinson_iterate(f, half, 1), std::domain_error);
}

TEST_CASE("d1 distance: dirac pair gives |a|") {
  auto d0 = AtomicMeasure<double>::dirac(0.0);
  auto da = AtomicMeasure<double>::dirac(0.8);
  CHECK(d1_distance(d0, da) == doctest::Approx(0.8));
  CHECK(d1_distance(d0, d0) == 0.0);
}

TEST_CASE("d1 contraction: consecutive iterates shrink with ratio <= lambda") {
  IFS1D<double> f(0.75);
  auto d0 = AtomicMeasure<double>::dirac(0.0);
  std::vector<AtomicMeasure<double>> iter{d0};
  for (int n = 1; n <= 10; ++n) iter.push_back(hutchinson_iterate(f, iter.back(), 1));
  double prev = d1_distance(iter[0], iter[1]);
  for (int n = 1; n + 1 <= 10; ++n) {
    double cur = d1_distance(iter[n], iter[n + 1]);
    CHECK(cur <= 0.75 * prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("d1 is a metric on random discrete measures") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pt(0.0, 2.0);
  std::uniform_int_distribution<int> cnt(1, 6);
  auto random_measure = [&]() {
    int k = cnt(rng);
    std::vector<WeightedAtom<double>> atoms;
    for (int i = 0; i < k; ++i) atoms.push_back({pt(rng), Rational(1, k)});
    return AtomicMeasure<double>(std::move(atoms)).consolidate(1e-12);
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_measure(), b = random_measure(), c = random_measure();
    double ab = d1_distance(a, b), ba = d1_distance(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(ab >= 0.0);
    CHECK(d1_distance(a, a) == 0.0);
    double ac = d1_distance(a, c), cb = d1_distance(c, b);
    CHECK(ab <= ac + cb + 1e-12);
  }
}

TEST_CASE("hutchinson limit is independent of the initial measure") {
  IFS1D<double> f(0.7);
  auto from_dirac = hutchinson_iterate(f, AtomicMeasure<double>::dirac(0.0), 14);
  std::vector<WeightedAtom<double>> spread{{0.3, Rational(1, 4)},
                                           {1.1, Rational(1, 2)},
                                           {2.0, Rational(1, 4)}};
  auto nu0 = AtomicMeasure<double>(std::move(spread)).consolidate(f.eps);
  auto from_spread = hutchinson_iterate(f, nu0, 14);
  // d1 distance shrinks like lambda^n * d1(nu0, delta0)
  double d = d1_distance(from_dirac, from_spread);
  double bound = std::pow(0.7, 14) * d1_distance(AtomicMeasure<double>::dirac(0.0), nu0);
  CHECK(d <= bound + 1e-12);
}

TEST_CASE("encode rejects non-binary words") {
  IFS1D<double> f(0.75);
  CHECK_THROWS_AS(encode_point(f, Word(3, {0, 1, 2})), std::domain_error);
  CHECK_THROWS_AS(Word(2, {0, 2}), std::domain_error);
}

TEST_CASE("case tags") {
  CHECK(IFS1D<double>(0.3).case_tag() == Case1D::Cantor);
  CHECK(IFS1D<double>(0.5).case_tag() == Case1D::Lebesgue);
  CHECK(IFS1D<double>(0.7).case_tag() == Case1D::Overlap);
  CHECK_THROWS_AS(IFS1D<double>(1.2), std::domain_error);
  CHECK_THROWS_AS(IFS1D<double>(0.0), std::domain_error);
}
