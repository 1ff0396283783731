#pragma once

#include <memory>
#include <mutex>
#include <vector>
#include <optional>
#include <stdexcept>
#include <string>

#include "overlap_ifs/rational.hpp"

namespace ifs {

class Quadratic;

/// The real quadratic field Q(r) where r is a root of x^2 = p x + q chosen in
/// (0,1). Elements are a + b*r with rational a, b; products reduce through the
/// minimal polynomial, so the representation is canonical and sign/compare are
/// exact. When the discriminant is a perfect square the root is rational and
/// elements canonicalize to b = 0.
///
/// Fields are immutable after construction; Quadratic values hold a raw
/// pointer, so the field must outlive its values (tests and the CLI keep a
/// shared_ptr or use the static golden() instance).
class QuadraticField {
 public:
  /// Field for x^2 = p x + q. Throws std::domain_error when no real root
  /// lies in (0,1). If both roots are in (0,1) the larger one is chosen.
  QuadraticField(const Rational& p, const Rational& q) : p_(p), q_(q) {
    init_root();
  }

  /// Field whose "root" is the rational value r in (0,1) (x^2 = r^2).
  explicit QuadraticField(const Rational& r) : p_(0), q_(r * r) {
    if (!(Rational(0) < r && r < Rational(1)))
      throw std::domain_error("rational scale not in (0,1)");
    rational_root_ = true;
    root_rat_ = r;
    root_d_ = r.to_double();
  }

  static const QuadraticField& golden() {
    static const QuadraticField f{Rational(-1), Rational(1)};  // x^2 = -x + 1
    return f;
  }

  /// Process-lifetime field registry: returns a reference that stays valid
  /// forever, so values built from it can never dangle. Fields are keyed by
  /// (p, q) and constructed once.
  static const QuadraticField& intern(const Rational& p, const Rational& q);
  static const QuadraticField& intern(const Rational& rational_scale);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  bool has_rational_root() const { return rational_root_; }
  const Rational& rational_root_value() const { return root_rat_; }
  double root_double() const { return root_d_; }

  Quadratic root() const;
  Quadratic value(const Rational& a, const Rational& b) const;
  Quadratic from_rational(const Rational& a) const;
  Quadratic zero() const;
  Quadratic one() const;

  /// Exact sign of a + b*root.
  int sign(const Rational& a, const Rational& b) const {
    if (b.is_zero()) return a.sign();
    if (rational_root_) return (a + b * root_rat_).sign();
    Rational r = -a / b;  // a + b*root = b * (root - r)
    int cmp = compare_root_to(r);
    if (cmp == 0) return 0;
    return cmp * b.sign();
  }

  double to_double(const Rational& a, const Rational& b) const {
    return a.to_double() + b.to_double() * root_d_;
  }

  std::string describe() const {
    return "x^2 = " + p_.to_string() + "*x + " + q_.to_string();
  }

 private:
  // sign of f(r) = r^2 - p r - q, exactly
  int sign_f(const Rational& r) const {
    using detail::mul128;
    i128 rn = r.num(), rd = r.den();
    i128 pn = p_.num(), pd = p_.den();
    i128 qn = q_.num(), qd = q_.den();
    // common denominator rd^2 * pd * qd (positive)
    i128 t1 = mul128(mul128(rn, rn), mul128(pd, qd));
    i128 t2 = mul128(mul128(pn, rn), mul128(rd, qd));
    i128 t3 = mul128(mul128(qn, rd), mul128(rd, pd));
    i128 v = t1 - t2 - t3;
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  // -1,0,+1 for root vs rational r (0 means equal; only in the square-free
  // case where r happens to be the isolated root)
  int compare_root_to(const Rational& r) const {
    if (r <= iso_lo_) return 1;
    if (r >= iso_hi_) return -1;
    int s = sign_f(r);
    if (s == 0) return 0;  // r is a root, and the only one in (iso_lo, iso_hi)
    if (root_is_upper_) return s < 0 ? 1 : -1;  // f<0 left of the upper root
    return s > 0 ? 1 : -1;                      // f>0 left of the lower root
  }

  void init_root() {
    Rational D = p_ * p_ + Rational(4) * q_;
    if (D.sign() < 0) throw std::domain_error("no real root in (0,1)");
    if (auto s = rational_sqrt(D)) {
      rational_root_ = true;
      Rational r_hi = (p_ + *s) / Rational(2);
      Rational r_lo = (p_ - *s) / Rational(2);
      if (Rational(0) < r_hi && r_hi < Rational(1))
        root_rat_ = r_hi;
      else if (Rational(0) < r_lo && r_lo < Rational(1))
        root_rat_ = r_lo;
      else
        throw std::domain_error("no real root in (0,1)");
      root_d_ = root_rat_.to_double();
      return;
    }
    // irrational root: f(0) = -q and f(1) = 1 - p - q are nonzero here
    // (a rational root at 0 or 1 would make D a perfect square)
    int f0 = (-q_).sign();
    int f1 = (Rational(1) - p_ - q_).sign();
    if (f0 > 0 && f1 < 0) {
      root_is_upper_ = false;
      iso_lo_ = Rational(0);
      iso_hi_ = Rational(1);
    } else if (f0 < 0 && f1 > 0) {
      root_is_upper_ = true;
      iso_lo_ = Rational(0);
      iso_hi_ = Rational(1);
    } else if (f0 > 0 && f1 > 0) {
      // both roots in (0,1) iff the vertex p/2 lies inside with f(p/2) < 0
      Rational v = p_ / Rational(2);
      if (Rational(0) < v && v < Rational(1) && sign_f(v) < 0) {
        root_is_upper_ = true;  // pick the larger of the two
        iso_lo_ = v;
        iso_hi_ = Rational(1);
      } else {
        throw std::domain_error("no real root in (0,1)");
      }
    } else {
      throw std::domain_error("no real root in (0,1)");
    }
    // a short bisection keeps comparison denominators small; correctness does
    // not depend on the width, only on isolation
    for (int i = 0; i < 24; ++i) {
      Rational mid = (iso_lo_ + iso_hi_) / Rational(2);
      int s = sign_f(mid);
      bool go_right = root_is_upper_ ? (s < 0) : (s > 0);
      if (go_right)
        iso_lo_ = mid;
      else
        iso_hi_ = mid;
    }
    // double approximation, polished with Newton in long double
    long double pd = static_cast<long double>(p_.to_double());
    long double qd = static_cast<long double>(q_.to_double());
    long double disc = sqrtl(pd * pd + 4.0L * qd);
    long double x = root_is_upper_ ? (pd + disc) / 2.0L : (pd - disc) / 2.0L;
    for (int i = 0; i < 3; ++i) {
      long double f = x * x - pd * x - qd;
      long double df = 2.0L * x - pd;
      if (df != 0.0L) x -= f / df;
    }
    root_d_ = static_cast<double>(x);
  }

  static std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x.sign() < 0) return std::nullopt;
    auto isqrt = [](i64 v) -> std::optional<i64> {
      if (v < 0) return std::nullopt;
      i64 r = static_cast<i64>(std::llround(std::sqrt(double(v))));
      for (i64 c = r > 1 ? r - 1 : 0; c <= r + 1; ++c)
        if (c * c == v) return c;
      return std::nullopt;
    };
    auto sn = isqrt(x.num());
    auto sd = isqrt(x.den());
    if (sn && sd) return Rational(*sn, *sd);
    return std::nullopt;
  }

  Rational p_, q_;
  bool rational_root_ = false;
  Rational root_rat_;
  Rational iso_lo_, iso_hi_;
  bool root_is_upper_ = true;
  double root_d_ = 0.0;
};

/// Element a + b*root of a QuadraticField. Immutable value type; arithmetic
/// is exact and closed (products reduce via the minimal polynomial).
class Quadratic {
 public:
  Quadratic() : field_(nullptr) {}
  Quadratic(const QuadraticField* f, Rational a, Rational b)
      : field_(f), a_(std::move(a)), b_(std::move(b)) {
    if (field_ && field_->has_rational_root() && !b_.is_zero()) {
      // canonical form in the degenerate (rational-root) case
      a_ = a_ + b_ * rational_root();
      b_ = Rational(0);
    }
  }

  const QuadraticField* field() const { return field_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  int sign() const { return field_->sign(a_, b_); }
  double to_double() const { return field_->to_double(a_, b_); }

  Quadratic operator-() const { return Quadratic(field_, -a_, -b_); }

  friend Quadratic operator+(const Quadratic& x, const Quadratic& y) {
    x.check(y);
    return Quadratic(x.field_, x.a_ + y.a_, x.b_ + y.b_);
  }
  friend Quadratic operator-(const Quadratic& x, const Quadratic& y) {
    x.check(y);
    return Quadratic(x.field_, x.a_ - y.a_, x.b_ - y.b_);
  }
  friend Quadratic operator*(const Quadratic& x, const Quadratic& y) {
    x.check(y);
    // (a1 + b1 r)(a2 + b2 r), r^2 = p r + q
    const Rational& p = x.field_->p();
    const Rational& q = x.field_->q();
    Rational bb = x.b_ * y.b_;
    return Quadratic(x.field_, x.a_ * y.a_ + bb * q,
                     x.a_ * y.b_ + x.b_ * y.a_ + bb * p);
  }
  friend Quadratic operator/(const Quadratic& x, const Quadratic& y) {
    x.check(y);
    if (y.is_zero()) throw std::domain_error("quadratic division by zero");
    const Rational& p = x.field_->p();
    const Rational& q = x.field_->q();
    // (a + b r)^{-1} = (a + b p - b r) / (a^2 + a b p - b^2 q)
    Rational norm = y.a_ * y.a_ + y.a_ * y.b_ * p - y.b_ * y.b_ * q;
    if (norm.is_zero()) throw std::domain_error("quadratic division by zero");
    Quadratic conj(x.field_, (y.a_ + y.b_ * p) / norm, -y.b_ / norm);
    return x * conj;
  }

  Quadratic& operator+=(const Quadratic& o) { return *this = *this + o; }
  Quadratic& operator-=(const Quadratic& o) { return *this = *this - o; }
  Quadratic& operator*=(const Quadratic& o) { return *this = *this * o; }
  Quadratic& operator/=(const Quadratic& o) { return *this = *this / o; }

  friend bool operator==(const Quadratic& x, const Quadratic& y) {
    x.check(y);
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Quadratic& x, const Quadratic& y) { return !(x == y); }
  friend bool operator<(const Quadratic& x, const Quadratic& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const Quadratic& x, const Quadratic& y) { return y < x; }
  friend bool operator<=(const Quadratic& x, const Quadratic& y) { return !(y < x); }
  friend bool operator>=(const Quadratic& x, const Quadratic& y) { return !(x < y); }

  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    return a_.to_string() + " + (" + b_.to_string() + ")*r";
  }

 private:
  Rational rational_root() const { return field_->rational_root_value(); }

  void check(const Quadratic& o) const {
    if (field_ != o.field_)
      throw std::domain_error("mixing elements of different quadratic fields");
  }

  const QuadraticField* field_;
  Rational a_, b_;
};

inline Quadratic QuadraticField::root() const {
  return rational_root_ ? Quadratic(this, root_rat_, Rational(0))
                        : Quadratic(this, Rational(0), Rational(1));
}
inline Quadratic QuadraticField::value(const Rational& a, const Rational& b) const {
  return Quadratic(this, a, b);
}
inline Quadratic QuadraticField::from_rational(const Rational& a) const {
  return Quadratic(this, a, Rational(0));
}
inline Quadratic QuadraticField::zero() const { return from_rational(Rational(0)); }
inline Quadratic QuadraticField::one() const { return from_rational(Rational(1)); }

namespace detail {
struct FieldRegistry {
  std::mutex mutex;
  std::vector<std::unique_ptr<QuadraticField>> fields;
  std::vector<std::pair<Rational, Rational>> keys;  // (p, q)
};
inline FieldRegistry& field_registry() {
  static FieldRegistry reg;
  return reg;
}
}  // namespace detail

inline const QuadraticField& QuadraticField::intern(const Rational& p,
                                                    const Rational& q) {
  auto& reg = detail::field_registry();
  std::lock_guard<std::mutex> lock(reg.mutex);
  for (size_t i = 0; i < reg.keys.size(); ++i)
    if (reg.keys[i].first == p && reg.keys[i].second == q) return *reg.fields[i];
  reg.fields.push_back(std::make_unique<QuadraticField>(p, q));
  reg.keys.emplace_back(p, q);
  return *reg.fields.back();
}

inline const QuadraticField& QuadraticField::intern(const Rational& r) {
  // same registry, keyed by the derived minimal data (p=0, q=r^2); the
  // rational-root constructor keeps the exact root value
  auto& reg = detail::field_registry();
  std::lock_guard<std::mutex> lock(reg.mutex);
  Rational p(0), q = r * r;
  for (size_t i = 0; i < reg.keys.size(); ++i)
    if (reg.keys[i].first == p && reg.keys[i].second == q) return *reg.fields[i];
  reg.fields.push_back(std::make_unique<QuadraticField>(r));
  reg.keys.emplace_back(p, q);
  return *reg.fields.back();
}

inline Quadratic pow(const Quadratic& base, int k) {
  Quadratic r = base.field()->one();
  Quadratic b = base;
  while (k > 0) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

}  // namespace ifs
