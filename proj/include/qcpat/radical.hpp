#pragma once

#include <complex>
#include <map>
#include <vector>

#include "qcpat/fraction.hpp"

namespace qcpat {

// Square-free radicand key.  The radicand it denotes is
//
//   sgn * intPart * v^vPow * prod(factors)
//
// with intPart a square-free positive integer, vPow in {0, 1}, factors a
// sorted list of distinct canonical-core polynomials of degree span >= 1,
// and sgn in {+1, -1}.  Invariant maintained by construction and
// multiplication: the signed radicand is >= 0 as v -> 1 from above, so the
// square root is real there and evaluation at real points near 1 is safe.
// The unit key (radicand 1) carries the rational-function part of a scalar.
struct RadKey {
  Integer intPart = 1;
  int vPow = 0;
  std::vector<LaurentPoly> factors;
  int sgn = 1;

  bool is_unit() const {
    return intPart == 1 && vPow == 0 && factors.empty() && sgn == 1;
  }
  LaurentPoly radicand() const;  // expanded, signed
  bool operator==(const RadKey& o) const;
  bool operator<(const RadKey& o) const;
};

// Exact scalar: finite sum  sum_k coeff_k * sqrt(radicand_k)  over pairwise
// distinct square-free radicand keys, with factored-rational-function
// coefficients.  Terms with zero coefficient are never stored, so is_zero()
// is structural.  Distinct square-free radicands have linearly independent
// square roots over the rational functions, which makes the zero test exact.
struct RadicalScalar {
  std::map<RadKey, Frac> terms;

  static RadicalScalar zero() { return RadicalScalar(); }
  static RadicalScalar one() { return from_frac(Frac::one()); }
  static RadicalScalar from_frac(const Frac& c);
  static RadicalScalar from_rational(const Rational& r) {
    return from_frac(Frac::from_rational(r));
  }

  bool is_zero() const { return terms.empty(); }
  // The coefficient of the unit key, if the scalar is purely rational
  // (no genuine radical terms); nullopt otherwise.
  const Frac* rational_part_if_pure() const;

  RadicalScalar operator-() const;
  friend RadicalScalar operator+(const RadicalScalar& a,
                                 const RadicalScalar& b);
  friend RadicalScalar operator-(const RadicalScalar& a,
                                 const RadicalScalar& b);
  friend RadicalScalar operator*(const RadicalScalar& a,
                                 const RadicalScalar& b);
  RadicalScalar& operator+=(const RadicalScalar& o) {
    return *this = *this + o;
  }
  RadicalScalar& operator-=(const RadicalScalar& o) {
    return *this = *this - o;
  }
  RadicalScalar& operator*=(const RadicalScalar& o) {
    return *this = *this * o;
  }

  RadicalScalar scaled(const Frac& c) const;
  RadicalScalar scaled_rational(const Rational& c) const;
  bool equals(const RadicalScalar& o) const { return (*this - o).is_zero(); }

  std::complex<double> eval_complex(const std::complex<double>& v0) const;
  double eval_real(double v0) const;  // radicands must be >= 0 at v0
};

// sign * sqrt(|p|) as a RadicalScalar (zero when p = 0); sign in {+1, -1}.
// The square-free split of p is refined against small cyclotomic polynomials
// (all d with phi(d) <= span and d <= 256) so that radicands produced by
// independent calls share factor keys deterministically.
RadicalScalar rad_make(const LaurentPoly& p, int sign);

// sign * sqrt(| prod_a [a] / prod_b [b] |) over q-brackets of the given
// integer arguments, computed by cyclotomic exponent bookkeeping (no
// polynomial gcd).  A zero numerator argument yields zero; a zero denominator
// argument throws std::domain_error.
RadicalScalar rad_from_brackets(int sign, const std::vector<long>& numArgs,
                                const std::vector<long>& denArgs);

// Arguments of one engine coefficient, recorded for classical-limit checks.
struct BracketTrace {
  int sign = 1;
  std::vector<long> numArgs;
  std::vector<long> denArgs;
};

}  // namespace qcpat
