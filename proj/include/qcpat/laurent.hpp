#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qcpat/rational.hpp"

namespace qcpat {

// Laurent polynomial in the deformation parameter v (with q = v^2) over the
// rationals, stored densely over a common positive integer denominator:
//
//   p = (1/den) * sum_i coeff[i] * v^(minExp + i).
//
// Canonical form: coeff is empty iff p = 0 (then minExp = 0 and den = 1);
// otherwise coeff.front() != 0, coeff.back() != 0, den > 0 and
// gcd(content(coeff), den) = 1.  Canonical form makes structural equality
// coincide with semantic equality, so LaurentPoly can key ordered containers.
class LaurentPoly {
 public:
  int minExp = 0;
  std::vector<Integer> coeff;
  Integer den = 1;

  LaurentPoly() = default;

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return from_long(1); }
  static LaurentPoly var();  // the parameter v
  static LaurentPoly from_long(long n);
  static LaurentPoly from_rational(const Rational& r);
  static LaurentPoly monomial(const Rational& c, int exp);

  bool is_zero() const { return coeff.empty(); }
  bool is_one() const;
  bool is_constant() const { return coeff.size() <= 1 && minExp == 0; }

  // Lowest/highest exponent with nonzero coefficient; require a nonzero value.
  int low_exp() const;
  int high_exp() const;
  // Degree span high_exp - low_exp (0 for monomials); requires nonzero.
  int span() const;

  Rational coefficient_at(int exp) const;
  Rational leading_coefficient() const;  // at high_exp; requires nonzero
  Rational constant_value() const;       // requires is_constant()

  // Restores canonical form after direct member manipulation.
  void normalize();

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) {
    a *= b;
    return a;
  }

  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
  // Total order on canonical forms (for use as a map key).
  bool operator<(const LaurentPoly& o) const;

  LaurentPoly pow(unsigned e) const;
  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly shifted(int dExp) const;  // multiply by v^dExp
  LaurentPoly derivative() const;       // d/dv

  // Evaluation.  Negative exponents require v0 != 0 (throws
  // std::domain_error otherwise); eval_mod requires gcd(den, p) = 1.
  Rational eval_rational(const Rational& v0) const;
  std::complex<double> eval_complex(const std::complex<double>& v0) const;
  double eval_double(double v0) const;
  std::uint64_t eval_mod(std::uint64_t v0, std::uint64_t p) const;

  // Compact text form without spaces, exponents in descending order, e.g.
  // "v^4+2v^2-1", "v^-2", "(1/2)v^3-(3/2)", "0".  parse() accepts exactly the
  // emitted grammar (throws std::invalid_argument) and round-trips.
  std::string to_string() const;
  static LaurentPoly parse(const std::string& s);
};

// q-number [n] as a Laurent polynomial in v (q = v^2):
// [n] = (q^n - q^-n) / (q - q^-1), so [0] = 0, [-n] = -[n], [1] = 1.
LaurentPoly qbracket(long n);

// Value of [n] at a rational point q0 (q0 not 0, 1 or -1).
Rational qbracket_at(long n, const Rational& q0);

// Cyclotomic polynomial Phi_d(v) for d >= 1, memoized; thread safe.
const LaurentPoly& cyclotomic(unsigned d);

// The cyclotomic indices of [a] for a >= 1: the divisors d of 4a that do not
// divide 4, so that [a] = v^(2-2a) * prod_d Phi_d(v).
std::vector<unsigned> bracket_cyclotomic_indices(long a);

// v^(2a-2) * [a] for a >= 1: the monic integer polynomial prod Phi_d(v).
LaurentPoly bracket_core(long a);

}  // namespace qcpat
