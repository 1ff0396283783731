#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <functional>
#include <memory>
#include <random>

#include "overlap_ifs/ifs1d.hpp"
#include "overlap_ifs/overlap1d.hpp"

namespace ifs {

using RealFn = std::function<double(double)>;

struct RnValue {
  double value = 0.0;
  int depth = 0;
  bool near_boundary = false;  // within one tail radius of a piece boundary
};

/// Radon-Nikodym derivative phi_i = d(mu o tau_i^{-1})/d(mu), evaluated
/// through the depth-n cascade approximant F_n. Off the overlap the value is
/// exact (0 or 2); on the overlap it inherits the approximant's depth.
class RnDerivative {
 public:
  RnDerivative(int index, double lambda, StepFunction<double> F, int depth)
      : index_(index),
        lambda_(lambda),
        F_(std::move(F)),
        depth_(depth),
        b_(lambda / (1.0 - lambda)),
        ov_lo_(lambda),
        ov_hi_(lambda * lambda / (1.0 - lambda)),
        tail_(std::pow(lambda, depth + 1) / (1.0 - lambda)) {
    if (index != 0 && index != 1) throw std::domain_error("branch index must be 0 or 1");
  }

  int index() const { return index_; }
  int depth() const { return depth_; }
  double lambda() const { return lambda_; }
  double support_end() const { return b_; }
  double overlap_lo() const { return ov_lo_; }
  double overlap_hi() const { return ov_hi_; }

  RnValue eval(double x) const {
    const double slack = 1e-12 * std::max(1.0, b_);
    if (x < -slack || x > b_ + slack)
      throw std::domain_error("rn_eval: point outside the attractor");
    x = std::min(std::max(x, 0.0), b_);
    RnValue r;
    r.depth = depth_;
    r.near_boundary = std::abs(x - ov_lo_) <= tail_ || std::abs(x - ov_hi_) <= tail_;
    if (lambda_ > 0.5) {
      if (x < ov_lo_)
        r.value = index_ == 0 ? 2.0 : 0.0;
      else if (x > ov_hi_)
        r.value = index_ == 0 ? 0.0 : 2.0;
      else if (index_ == 0)
        r.value = 2.0 * F_.eval((lambda_ * lambda_ - x * (1.0 - lambda_)) /
                                ((1.0 - lambda_) * (2.0 * lambda_ - 1.0)));
      else
        r.value = 2.0 * F_.eval((x - lambda_) / (2.0 * lambda_ - 1.0));
    } else if (lambda_ < 0.5) {
      // no essential overlap: phi_i = 2 * indicator(tau_i(X))
      if (index_ == 0)
        r.value = x <= ov_hi_ ? 2.0 : 0.0;
      else
        r.value = x >= ov_lo_ ? 2.0 : 0.0;
    } else {
      // lambda = 1/2: overlap is the single point 1/2
      if (x < 0.5)
        r.value = index_ == 0 ? 2.0 : 0.0;
      else if (x > 0.5)
        r.value = index_ == 0 ? 0.0 : 2.0;
      else
        r.value = 1.0;
    }
    return r;
  }

  double operator()(double x) const { return eval(x).value; }

 private:
  int index_;
  double lambda_;
  StepFunction<double> F_;
  int depth_;
  double b_, ov_lo_, ov_hi_, tail_;
};

template <class S>
RnDerivative make_rn_derivative(const IFS1D<S>& f, int index, int depth) {
  return RnDerivative(index, ScalarOps<S>::to_double(f.lambda),
                      cascade_cdf(f, depth).to_float(), depth);
}

struct RnPair {
  RnDerivative phi0, phi1;
  double b() const { return phi0.support_end(); }
  double lambda() const { return phi0.lambda(); }
};

template <class S>
RnPair make_rn_pair(const IFS1D<S>& f, int depth) {
  return {make_rn_derivative(f, 0, depth), make_rn_derivative(f, 1, depth)};
}

/// max over the grid of |phi_0 + phi_1 - 2|; exactly 0 off the overlap, the
/// on-overlap residual is approximant error shrinking with depth.
inline double rn_sum_check(const RnPair& rn, int grid_points) {
  double b = rn.b();
  double worst = 0.0;
  for (int i = 0; i <= grid_points; ++i) {
    double x = b * double(i) / double(grid_points);
    worst = std::max(worst,
                     std::abs(rn.phi0(x) + rn.phi1(x) - 2.0));
  }
  return worst;
}

/// F_i^* f (x) = (1/sqrt 2) phi_i(x) f(sigma_i x) with sigma_0 x = x/lambda,
/// sigma_1 x = x/lambda - 1, zero off tau_i(X).
inline RealFn apply_adjoint(const RnPair& rn, int i, RealFn f) {
  const RnDerivative& phi = i == 0 ? rn.phi0 : rn.phi1;
  double lambda = rn.lambda();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return [phi, lambda, i, f = std::move(f), inv_sqrt2](double x) {
    double p = phi(x);
    if (p == 0.0) return 0.0;
    double pre = i == 0 ? x / lambda : x / lambda - 1.0;
    return inv_sqrt2 * p * f(pre);
  };
}

/// F_i f = (1/sqrt 2) f(tau_i x).
inline RealFn apply_isometry_branch(double lambda, int i, RealFn f) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return [lambda, i, f = std::move(f), inv_sqrt2](double x) {
    return inv_sqrt2 * f(lambda * (x + double(i)));
  };
}

struct FnPair {
  RealFn c0, c1;
};

/// A pair of functions held as value vectors on the atoms of a quadrature
/// measure: an element of L^2(mu)_2 for numerical operator application.
struct SampledFunctionPair {
  AtomicMeasure<double> quadrature;
  Eigen::VectorXd f0, f1;

  SampledFunctionPair(AtomicMeasure<double> quad, const FnPair& p)
      : quadrature(std::move(quad)) {
    f0.resize(long(quadrature.size()));
    f1.resize(long(quadrature.size()));
    for (size_t i = 0; i < quadrature.size(); ++i) {
      f0[long(i)] = p.c0(quadrature.atoms()[i].point);
      f1[long(i)] = p.c1(quadrature.atoms()[i].point);
    }
  }

  double norm() const {
    double acc = 0.0;
    for (size_t i = 0; i < quadrature.size(); ++i)
      acc += quadrature.atoms()[i].weight.to_double() *
             (f0[long(i)] * f0[long(i)] + f1[long(i)] * f1[long(i)]);
    return std::sqrt(acc);
  }
};

/// The 2x2 range projection FF^* acting on pairs, with unit translations
/// T_{+-1}. Translated arguments that leave [0, b] contribute 0 and are
/// counted in a shared diagnostic.
class RangeProjection {
 public:
  explicit RangeProjection(RnPair rn)
      : rn_(std::move(rn)), out_of_domain_(std::make_shared<std::atomic<long>>(0)) {}

  const RnPair& rn() const { return rn_; }
  long out_of_domain_count() const { return out_of_domain_->load(); }

  SampledFunctionPair apply(const SampledFunctionPair& p, const FnPair& source) const {
    // entrywise application on the pair's own quadrature atoms; the source
    // callables supply the translated evaluations
    return SampledFunctionPair(p.quadrature, apply(source));
  }

  FnPair apply(const FnPair& p) const {
    RnPair rn = rn_;
    auto counter = out_of_domain_;
    double b = rn.b();
    double lambda = rn.lambda();
    RealFn f0 = p.c0, f1 = p.c1;
    RealFn r0 = [rn, counter, b, lambda, f0, f1](double x) {
      double t0 = lambda * x;  // tau_0(x)
      double a = rn.phi0(t0) * f0(x);
      double c = rn.phi1(t0);
      double bterm = 0.0;
      if (c != 0.0) {
        if (x - 1.0 < 0.0 || x - 1.0 > b)
          counter->fetch_add(1);
        else
          bterm = c * f1(x - 1.0);
      }
      return 0.5 * (a + bterm);
    };
    RealFn r1 = [rn, counter, b, lambda, f0, f1](double x) {
      double t1 = lambda * (x + 1.0);  // tau_1(x)
      double c = rn.phi0(t1);
      double aterm = 0.0;
      if (c != 0.0) {
        if (x + 1.0 < 0.0 || x + 1.0 > b)
          counter->fetch_add(1);
        else
          aterm = c * f0(x + 1.0);
      }
      double d = rn.phi1(t1) * f1(x);
      return 0.5 * (aterm + d);
    };
    return {std::move(r0), std::move(r1)};
  }

 private:
  RnPair rn_;
  std::shared_ptr<std::atomic<long>> out_of_domain_;
};

/// The vector (phi_1 o tau_0, -phi_0 o tau_1), orthogonal to the range of the
/// column isometry; identically zero when lambda < 1/2.
inline FnPair overlap_defect_vector(const RnPair& rn) {
  RnPair c = rn;
  double lambda = rn.lambda();
  return {[c, lambda](double x) { return c.phi1(lambda * x); },
          [c, lambda](double x) { return -c.phi0(lambda * (x + 1.0)); }};
}

inline Eigen::VectorXd sample(const RealFn& f, const AtomicMeasure<double>& quad) {
  Eigen::VectorXd v(quad.size());
  for (size_t i = 0; i < quad.size(); ++i) v[long(i)] = f(quad.atoms()[i].point);
  return v;
}

/// L^2(mu_quad) squared norm of a sampled function.
inline double norm2_sq(const RealFn& f, const AtomicMeasure<double>& quad) {
  double acc = 0.0;
  for (const auto& a : quad.atoms()) {
    double v = f(a.point);
    acc += a.weight.to_double() * v * v;
  }
  return acc;
}

inline double norm2_sq(const FnPair& p, const AtomicMeasure<double>& quad) {
  return norm2_sq(p.c0, quad) + norm2_sq(p.c1, quad);
}

inline double pair_distance(const FnPair& p, const FnPair& q,
                            const AtomicMeasure<double>& quad) {
  double acc = 0.0;
  for (const auto& a : quad.atoms()) {
    double d0 = p.c0(a.point) - q.c0(a.point);
    double d1 = p.c1(a.point) - q.c1(a.point);
    acc += a.weight.to_double() * (d0 * d0 + d1 * d1);
  }
  return std::sqrt(acc);
}

/// Random polynomial test family on [0, b], deterministic in the seed.
inline std::vector<RealFn> random_polynomials(int count, double b, unsigned seed,
                                              int degree = 4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<RealFn> fns;
  fns.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<double> c(degree + 1);
    for (auto& x : c) x = coef(rng);
    fns.push_back([c, b](double x) {
      double u = x / b, acc = 0.0;
      for (int k = int(c.size()) - 1; k >= 0; --k) acc = acc * u + c[k];
      return acc;
    });
  }
  return fns;
}

/// max over random pairs of ||(FF*)^2 p - FF* p|| / ||p|| in L^2(mu_n)_2.
inline double projection_identity_check(const RnPair& rn,
                                        const AtomicMeasure<double>& quad,
                                        int samples, unsigned seed) {
  RangeProjection proj(rn);
  auto fns = random_polynomials(2 * samples, rn.b(), seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    FnPair p{fns[2 * i], fns[2 * i + 1]};
    double denom = std::sqrt(norm2_sq(p, quad));
    if (denom == 0.0) continue;
    FnPair once = proj.apply(p);
    FnPair twice = proj.apply(once);
    worst = std::max(worst, pair_distance(twice, once, quad) / denom);
  }
  return worst;
}

}  // namespace ifs
