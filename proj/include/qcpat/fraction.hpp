#pragma once

#include <complex>
#include <map>
#include <utility>

#include "qcpat/ratfun.hpp"

namespace qcpat {

// Rational function kept as an expanded numerator over a *factored*
// denominator: value = num / prod_f f^den[f].  Denominator keys are canonical
// core polynomials of degree span >= 1 with exponents >= 1.  No reduction is
// performed on arithmetic (the factored denominator is preserved so that sums
// over many structurally related terms only ever extend the factor set);
// call reduce() to cancel, or to_ratfun() for the canonical reduced form.
// Zero test is num.is_zero() — exact, since the denominator is never zero.
struct Frac {
  LaurentPoly num = LaurentPoly::zero();
  std::map<LaurentPoly, int> den;

  static Frac zero() { return Frac(); }
  static Frac one() { return from_poly(LaurentPoly::one()); }
  static Frac from_poly(const LaurentPoly& p) { return Frac{p, {}}; }
  static Frac from_rational(const Rational& r) {
    return from_poly(LaurentPoly::from_rational(r));
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_poly() const { return den.empty(); }

  Frac operator-() const;
  friend Frac operator+(const Frac& a, const Frac& b);
  friend Frac operator-(const Frac& a, const Frac& b);
  friend Frac operator*(const Frac& a, const Frac& b);
  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }

  Frac scaled(const Rational& c) const;
  Frac mul_poly(const LaurentPoly& p) const;
  // Multiply the denominator by f^e (f != 0); units of f fold into num.
  Frac div_poly(const LaurentPoly& f, int e = 1) const;
  Frac inverse() const;  // nonzero

  // Semantic equality (via the exact common-denominator difference).
  bool equals(const Frac& o) const { return (*this - o).is_zero(); }

  // Cancels denominator factors that divide the numerator.
  void reduce();

  LaurentPoly den_expanded() const;
  RatFun to_ratfun() const;

  // Denominator must not vanish at v0.
  Rational eval_rational(const Rational& v0) const;
  std::complex<double> eval_complex(const std::complex<double>& v0) const;
};

}  // namespace qcpat
