#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "overlap_ifs/errors.hpp"
#include "overlap_ifs/ifs1d.hpp"
#include "overlap_ifs/word.hpp"

namespace ifs {

/// Function on level-n cylinders of the N-symbol Bernoulli space, indexed by
/// the lexicographic word index (first digit most significant). The actual
/// function is N^(half_exp/2) * v, keeping sqrt(N) scalars symbolic so the
/// Cuntz identities can be checked without irrational factors.
struct CylinderFn {
  int alphabet = 2;
  int level = 0;
  int half_exp = 0;
  Eigen::VectorXd v;

  std::uint64_t dim() const { return int_pow(alphabet, level); }
  double scale() const { return std::pow(double(alphabet), 0.5 * half_exp); }
  Eigen::VectorXd materialize() const { return scale() * v; }

  static CylinderFn constant(int alphabet, int level, double value) {
    CylinderFn c{alphabet, level, 0, {}};
    c.v = Eigen::VectorXd::Constant(long(int_pow(alphabet, level)), value);
    return c;
  }
  static CylinderFn indicator(int alphabet, int level, std::uint64_t word_index) {
    CylinderFn c{alphabet, level, 0, {}};
    c.v = Eigen::VectorXd::Zero(long(int_pow(alphabet, level)));
    c.v[long(word_index)] = 1.0;
    return c;
  }
};

/// Bernoulli inner product <psi, chi> = N^{-n} sum psi chi (real values).
inline double inner(const CylinderFn& a, const CylinderFn& b) {
  if (a.alphabet != b.alphabet || a.level != b.level)
    throw std::domain_error("cylinder functions live on different spaces");
  double raw = a.v.dot(b.v) / double(int_pow(a.alphabet, a.level));
  return raw * std::pow(double(a.alphabet), 0.5 * (a.half_exp + b.half_exp));
}

inline double norm(const CylinderFn& a) { return std::sqrt(inner(a, a)); }

/// (S_i^* psi)(w) = (1/sqrt N) psi(i w): level n -> n-1.
inline CylinderFn shift_adjoint_apply(int i, const CylinderFn& psi) {
  if (psi.level < 1) throw std::domain_error("shift adjoint needs level >= 1");
  if (i < 0 || i >= psi.alphabet) throw std::domain_error("digit out of range");
  CylinderFn out{psi.alphabet, psi.level - 1, psi.half_exp - 1, {}};
  std::uint64_t block = int_pow(psi.alphabet, psi.level - 1);
  out.v = psi.v.segment(long(std::uint64_t(i) * block), long(block));
  return out;
}

/// (S_i psi)(w) = sqrt(N) psi(tail w) when w starts with i, else 0:
/// level n -> n+1. Never endomorphic; the level shift is the finite shadow of
/// the infinite-dimensionality of genuine Cuntz representations.
inline CylinderFn shift_isometry_apply(int i, const CylinderFn& psi) {
  if (i < 0 || i >= psi.alphabet) throw std::domain_error("digit out of range");
  CylinderFn out{psi.alphabet, psi.level + 1, psi.half_exp + 1, {}};
  std::uint64_t block = psi.dim();
  out.v = Eigen::VectorXd::Zero(long(block * std::uint64_t(psi.alphabet)));
  out.v.segment(long(std::uint64_t(i) * block), long(block)) = psi.v;
  return out;
}

/// Exact structural equality (same space, same symbolic scale, equal entries).
inline bool exactly_equal(const CylinderFn& a, const CylinderFn& b) {
  return a.alphabet == b.alphabet && a.level == b.level && a.half_exp == b.half_exp &&
         a.v == b.v;
}

// ---- dilation V: L^2(mu) -> L^2(Omega, P) at truncation level n ----

/// Truncated encoding of the word with lexicographic index `idx`:
/// sum_k lambda^k * digit_k (1D).
template <class S>
S encode_value(const IFS1D<S>& f, int n, std::uint64_t idx) {
  S v = f.zero();
  S power = f.one();
  for (int k = 1; k <= n; ++k) {
    power = power * f.lambda;
    int digit = int((idx >> (n - k)) & 1u);
    if (digit) v = v + power;
  }
  return v;
}

/// (V f)(w) = f(pi_n(w)). Isometric against the level-n quadrature measure.
template <class S>
CylinderFn dilation_embed(const IFS1D<S>& f, const std::function<double(double)>& fn,
                          int n) {
  f.check_budget(n, "dilation_embed");
  CylinderFn out{2, n, 0, {}};
  out.v = Eigen::VectorXd(long(std::uint64_t(1) << n));
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << n); ++idx)
    out.v[long(idx)] = fn(ScalarOps<S>::to_double(encode_value(f, n, idx)));
  return out;
}

/// ||V f||_P^2, and independently ||f||^2 against the consolidated T^n delta_0
/// measure (different summation paths; equal by the pushforward identity).
template <class S>
std::pair<double, double> dilation_isometry_pair(const IFS1D<S>& f,
                                                 const std::function<double(double)>& fn,
                                                 int n) {
  CylinderFn vf = dilation_embed(f, fn, n);
  double lhs = inner(vf, vf);
  double rhs = 0.0;
  AtomicMeasure<S> mu = node_measure(node_set(f, n));
  for (const auto& a : mu.atoms()) {
    double val = fn(ScalarOps<S>::to_double(a.point));
    rhs += a.weight.to_double() * val * val;
  }
  return {lhs, rhs};
}

/// max_i || V(F_i f) - S_i^* V f ||_P over the supplied sample functions.
/// The identity tau_i(pi_n(w)) = pi_{n+1}(i w) makes this exact up to
/// floating-point evaluation noise (identically zero in exact mode).
template <class S>
double intertwining_check(const IFS1D<S>& f,
                          const std::vector<std::function<double(double)>>& fns,
                          int n) {
  double worst = 0.0;
  for (const auto& fn : fns) {
    CylinderFn vf = dilation_embed(f, fn, n + 1);
    for (int i = 0; i < 2; ++i) {
      CylinderFn rhs = shift_adjoint_apply(i, vf);
      // lhs: values f(tau_i(pi_n(w))) with the 1/sqrt(N) kept symbolic
      CylinderFn lhs{2, n, -1, {}};
      lhs.v = Eigen::VectorXd(long(std::uint64_t(1) << n));
      for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << n); ++idx) {
        S x = encode_value(f, n, idx);
        lhs.v[long(idx)] = fn(ScalarOps<S>::to_double(f.tau(i, x)));
      }
      CylinderFn diff = lhs;
      diff.v -= rhs.v;
      worst = std::max(worst, norm(diff));
    }
  }
  return worst;
}

namespace detail {

/// Columns spanning { S-words applied to the given level-(n-k) embeddings };
/// embed(level) must return the V-images of the test family at that level.
inline std::vector<Eigen::VectorXd> s_word_span(
    int alphabet, int n,
    const std::function<std::vector<CylinderFn>(int)>& embed) {
  std::vector<Eigen::VectorXd> columns;
  for (int k = 0; k <= n; ++k) {
    for (const CylinderFn& base : embed(n - k)) {
      std::uint64_t words = int_pow(alphabet, k);
      for (std::uint64_t w = 0; w < words; ++w) {
        // S_{i_1} ... S_{i_k} V e, innermost (i_k) applied first; i_1 is the
        // most significant digit of w
        CylinderFn acc = base;
        std::uint64_t rest = w;
        for (int pos = k - 1; pos >= 0; --pos) {
          int digit = int(rest % std::uint64_t(alphabet));
          rest /= std::uint64_t(alphabet);
          acc = shift_isometry_apply(digit, acc);
        }
        columns.push_back(acc.v);  // symbolic scale is irrelevant to the span
      }
    }
  }
  return columns;
}

/// Worst projection residual of the level-n word indicators against the span,
/// modified Gram-Schmidt with reorthogonalization, drop tolerance 1e-12.
inline double span_residual(const std::vector<Eigen::VectorXd>& columns,
                            std::uint64_t dim) {
  std::vector<Eigen::VectorXd> q;
  for (const auto& c : columns) {
    Eigen::VectorXd w = c;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : q) w -= u.dot(w) * u;
    double nrm = w.norm();
    if (nrm > 1e-12 * std::max(1.0, c.norm())) q.push_back(w / nrm);
  }
  double worst = 0.0;
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    Eigen::VectorXd chi = Eigen::VectorXd::Zero(long(dim));
    chi[long(idx)] = 1.0;
    Eigen::VectorXd r = chi;
    for (const auto& u : q) r -= u.dot(chi) * u;
    worst = std::max(worst, r.norm());
  }
  return worst;
}

}  // namespace detail

/// Residual of projecting every level-n cylinder indicator onto the span of
/// { S_{i_1} ... S_{i_k} V e : k <= n, e in the family }. Zero at finite level:
/// the S-words on V(1) already reach every scaled cylinder indicator.
/// Family defaults to the constant 1; callers may add more functions.
template <class S>
double minimality_density_check(
    const IFS1D<S>& f, int n,
    const std::vector<std::function<double(double)>>& family_in = {}) {
  std::vector<std::function<double(double)>> family = family_in;
  if (family.empty()) family.push_back([](double) { return 1.0; });
  std::uint64_t dim = int_pow(2, n);
  if (dim > (std::uint64_t(1) << 22)) throw BudgetError("minimality level too deep");
  auto embed = [&](int level) {
    std::vector<CylinderFn> out;
    out.reserve(family.size());
    for (const auto& e : family) out.push_back(dilation_embed(f, e, level));
    return out;
  };
  return detail::span_residual(detail::s_word_span(2, n, embed), dim);
}

}  // namespace ifs
