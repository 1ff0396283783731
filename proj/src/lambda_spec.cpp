#include "overlap_ifs/lambda_spec.hpp"

#include <stdexcept>

namespace ifs {

LambdaSpec LambdaSpec::parse(const std::string& s) {
  LambdaSpec spec;
  spec.text = s;
  if (s == "golden") {
    spec.kind = Kind::Golden;
    spec.qp = Rational(-1);
    spec.qq = Rational(1);
    return spec;
  }
  if (s.rfind("quad:", 0) == 0) {
    auto body = s.substr(5);
    auto comma = body.find(',');
    if (comma == std::string::npos)
      throw std::domain_error("quadratic spec must be quad:p,q");
    spec.kind = Kind::Quad;
    spec.qp = Rational::parse(body.substr(0, comma));
    spec.qq = Rational::parse(body.substr(comma + 1));
    return spec;
  }
  if (s.find('/') != std::string::npos) {
    spec.kind = Kind::RationalKind;
    spec.rational = Rational::parse(s);
    if (!(Rational(0) < spec.rational && spec.rational < Rational(1)))
      throw std::domain_error("rational lambda must lie in (0,1)");
    return spec;
  }
  spec.kind = Kind::Decimal;
  size_t pos = 0;
  spec.decimal = std::stod(s, &pos);
  if (pos != s.size()) throw std::domain_error("unrecognized lambda spec: " + s);
  if (!(spec.decimal > 0.0 && spec.decimal < 1.0))
    throw std::domain_error("lambda must lie in (0,1)");
  return spec;
}

ScaleContext resolve_scale(const LambdaSpec& spec, Mode requested) {
  ScaleContext ctx;
  switch (spec.kind) {
    case LambdaSpec::Kind::Golden:
    case LambdaSpec::Kind::Quad: {
      if (requested == Mode::Float && spec.kind == LambdaSpec::Kind::Quad) {
        ctx.exact = false;
        QuadraticField f(spec.qp, spec.qq);
        ctx.value = f.root_double();
        return ctx;
      }
      ctx.exact = true;
      ctx.field = std::shared_ptr<const QuadraticField>(
          &QuadraticField::intern(spec.qp, spec.qq), [](const QuadraticField*) {});
      ctx.value = ctx.field->root_double();
      if (spec.kind == LambdaSpec::Kind::Golden && requested == Mode::Float) {
        ctx.exact = false;
        ctx.field.reset();
      }
      return ctx;
    }
    case LambdaSpec::Kind::RationalKind: {
      if (requested == Mode::Exact) {
        ctx.exact = true;
        ctx.field = std::shared_ptr<const QuadraticField>(
            &QuadraticField::intern(spec.rational), [](const QuadraticField*) {});
        ctx.value = spec.rational.to_double();
      } else {
        ctx.value = spec.rational.to_double();
      }
      return ctx;
    }
    case LambdaSpec::Kind::Decimal:
    default: {
      ctx.value = spec.decimal;
      if (requested == Mode::Exact)
        ctx.warning =
            "exact mode requires a quadratic or rational lambda; "
            "falling back to float for decimal spec";
      return ctx;
    }
  }
}

}  // namespace ifs
