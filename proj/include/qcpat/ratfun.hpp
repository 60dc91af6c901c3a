#pragma once

#include <complex>
#include <string>

#include "qcpat/polygcd.hpp"

namespace qcpat {

// Always-reduced rational function num/den in v.  Canonical form: den is a
// canonical core polynomial (so 1 for polynomials), gcd of num's core and den
// is 1, and num = 0 implies den = 1.  Structural equality is semantic
// equality.
struct RatFun {
  LaurentPoly num = LaurentPoly::zero();
  LaurentPoly den = LaurentPoly::one();

  static RatFun zero() { return RatFun(); }
  static RatFun one() { return from_poly(LaurentPoly::one()); }
  static RatFun from_poly(const LaurentPoly& p);
  static RatFun make(const LaurentPoly& num, const LaurentPoly& den);

  bool is_zero() const { return num.is_zero(); }
  bool operator==(const RatFun& o) const {
    return num == o.num && den == o.den;
  }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);  // b != 0
  RatFun inverse() const;                                     // nonzero

  // den(v0) != 0 required.
  Rational eval_rational(const Rational& v0) const;
  std::complex<double> eval_complex(const std::complex<double>& v0) const;

  std::string to_string() const;  // "(num)/(den)", or "(num)" for den = 1
};

}  // namespace qcpat
