#include "qcpat/ratfun.hpp"

#include <stdexcept>

namespace qcpat {

RatFun RatFun::from_poly(const LaurentPoly& p) {
  RatFun r;
  r.num = p;
  r.den = LaurentPoly::one();
  return r;
}

RatFun RatFun::make(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  if (num.is_zero()) return zero();
  UnitSplit ud = unit_split(den);
  LaurentPoly n = num.scaled(Rational(ud.unit.get_den(), ud.unit.get_num()))
                      .shifted(-ud.vExp);
  LaurentPoly d = ud.core;
  if (!d.is_one()) {
    LaurentPoly g = poly_gcd(n, d);
    if (!g.is_one()) {
      n = *exact_divide(n, g);
      d = *exact_divide(d, g);
      UnitSplit ud2 = unit_split(d);
      n = n.scaled(Rational(ud2.unit.get_den(), ud2.unit.get_num()))
              .shifted(-ud2.vExp);
      d = ud2.core;
    }
  }
  RatFun r;
  r.num = n;
  r.den = d;
  return r;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num = -r.num;
  return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  return RatFun::make(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  return RatFun::make(a.num * b.den - b.num * a.den, a.den * b.den);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  return RatFun::make(a.num * b.num, a.den * b.den);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return RatFun::make(a.num * b.den, a.den * b.num);
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return RatFun::make(den, num);
}

Rational RatFun::eval_rational(const Rational& v0) const {
  Rational d = den.eval_rational(v0);
  if (d == 0) throw std::domain_error("denominator vanishes at sample point");
  Rational r = num.eval_rational(v0) / d;
  r.canonicalize();
  return r;
}

std::complex<double> RatFun::eval_complex(
    const std::complex<double>& v0) const {
  return num.eval_complex(v0) / den.eval_complex(v0);
}

std::string RatFun::to_string() const {
  if (den.is_one()) return "(" + num.to_string() + ")";
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

}  // namespace qcpat
