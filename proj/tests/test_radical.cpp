#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qcpat/polygcd.hpp"
#include "qcpat/radical.hpp"
#include "qcpat/scalar_io.hpp"

using namespace qcpat;

namespace {

RadicalScalar random_scalar(std::mt19937_64& rng, int maxTerms = 2) {
  std::uniform_int_distribution<long> arg(-6, 6);
  std::uniform_int_distribution<int> nterm(1, maxTerms);
  std::uniform_int_distribution<int> nnum(0, 3);
  std::uniform_int_distribution<int> nden(0, 2);
  std::uniform_int_distribution<int> sgn(0, 1);
  RadicalScalar s;
  int terms = nterm(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<long> num, den;
    int kn = nnum(rng), kd = nden(rng);
    for (int i = 0; i < kn; ++i) num.push_back(arg(rng));
    for (int i = 0; i < kd; ++i) {
      long d = arg(rng);
      den.push_back(d == 0 ? 1 : d);
    }
    s += rad_from_brackets(sgn(rng) ? 1 : -1, num, den);
  }
  return s;
}

double abs_complex(const std::complex<double>& z) { return std::abs(z); }

}  // namespace

TEST_CASE("bracket radical pinned example") {
  // sqrt of [2]^2 [3] with a leading minus sign.
  LaurentPoly p = qbracket(2) * qbracket(2) * qbracket(3);
  RadicalScalar viaPoly = rad_make(p, -1);
  RadicalScalar viaBrackets = rad_from_brackets(-1, {2, 2, 3}, {});
  CHECK(viaPoly.equals(viaBrackets));
  REQUIRE(viaPoly.terms.size() == 1);
  const auto& [key, coeff] = *viaPoly.terms.begin();
  CHECK(key.factors.size() == 3);  // cyclotomic indices 3, 6, 12
  CHECK(key.radicand().to_string() == "v^8+v^4+1");
  CHECK(scalar_to_string(viaPoly) == "(-1)*(1+v^-4)*sqrt{v^8+v^4+1}");
  // Same factor keys from both construction paths (exact cancellation works).
  CHECK(viaPoly.terms.begin()->first == viaBrackets.terms.begin()->first);
}

TEST_CASE("radical multiplication collapses squares") {
  RadicalScalar r2 = rad_from_brackets(1, {2}, {});
  RadicalScalar sq = r2 * r2;
  CHECK(sq.equals(RadicalScalar::from_frac(Frac::from_poly(qbracket(2)))));
  // sqrt[2] * sqrt[3] = sqrt([2][3]).
  RadicalScalar r3 = rad_from_brackets(1, {3}, {});
  CHECK((r2 * r3).equals(rad_from_brackets(1, {2, 3}, {})));
  // Sign flows through the coefficient only.
  CHECK(rad_make(qbracket(5), -1).equals(-rad_make(qbracket(5), 1)));
}

TEST_CASE("radical zero and error handling") {
  CHECK(rad_from_brackets(1, {0, 3}, {}).is_zero());
  CHECK(rad_make(LaurentPoly::zero(), 1).is_zero());
  CHECK_THROWS_AS(rad_from_brackets(1, {3}, {0}), std::domain_error);
  RadicalScalar a = rad_from_brackets(1, {4}, {2});
  CHECK((a - a).is_zero());
}

TEST_CASE("radicands stay nonnegative near one") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 60; ++t) {
    RadicalScalar s = random_scalar(rng, 2);
    RadicalScalar prod = s * s;
    for (const auto& [k, c] : prod.terms) {
      (void)c;
      LaurentPoly rad = k.radicand();
      if (!rad.is_constant()) CHECK(sign_near_one(rad) == 1);
    }
    for (const auto& [k, c] : s.terms) {
      (void)c;
      CHECK(sign_near_one(k.radicand()) == 1);
    }
  }
}

TEST_CASE("radical ring axioms") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 50; ++t) {
    RadicalScalar a = random_scalar(rng), b = random_scalar(rng),
                  c = random_scalar(rng);
    CHECK(((a + b) + c).equals(a + (b + c)));
    CHECK((a + b).equals(b + a));
    CHECK((a * b).equals(b * a));
    CHECK(((a * b) * c).equals(a * (b * c)));
    CHECK((a * (b + c)).equals(a * b + a * c));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("evaluation is a homomorphism at real points") {
  std::mt19937_64 rng(71);
  for (double v0 : {1.1, 0.9}) {
    for (int t = 0; t < 30; ++t) {
      RadicalScalar a = random_scalar(rng), b = random_scalar(rng);
      std::complex<double> pa = a.eval_complex({v0, 0.0});
      std::complex<double> pb = b.eval_complex({v0, 0.0});
      CHECK(abs_complex((a * b).eval_complex({v0, 0.0}) - pa * pb) < 1e-9);
      CHECK(abs_complex((a + b).eval_complex({v0, 0.0}) - (pa + pb)) < 1e-9);
      // Real evaluation agrees with the complex path on the real axis.
      CHECK(std::abs(a.eval_real(v0) - pa.real()) < 1e-12);
      CHECK(std::abs(pa.imag()) < 1e-12);
    }
  }
}

TEST_CASE("bracket radical evaluates to the expected magnitude") {
  for (double v0 : {1.1, 0.9}) {
    auto bracket = [&](long n) {
      double q = v0 * v0;
      return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
    };
    RadicalScalar s = rad_from_brackets(-1, {3, -4}, {2});
    double expect = -std::sqrt(std::fabs(bracket(3) * bracket(-4) / bracket(2)));
    CHECK(std::abs(s.eval_real(v0) - expect) < 1e-10);
  }
}

TEST_CASE("scalar text round trip") {
  CHECK(scalar_to_string(RadicalScalar::zero()) == "(0)*sqrt{1}");
  CHECK(scalar_parse("(0)*sqrt{1}").is_zero());
  // Pinned grammar sample with sign, denominator and radical.
  RadicalScalar pinned =
      rad_make(cyclotomic(8), 1)
          .scaled(Frac::from_poly(-(LaurentPoly::var() * LaurentPoly::var() -
                                    LaurentPoly::one()))
                      .div_poly(LaurentPoly::var() * LaurentPoly::var() +
                                LaurentPoly::one()));
  CHECK(scalar_to_string(pinned) == "(-1)*(v^2-1)/(v^2+1)*sqrt{v^4+1}");
  CHECK(scalar_parse("(-1)*(v^2-1)/(v^2+1)*sqrt{v^4+1}").equals(pinned));

  std::mt19937_64 rng(73);
  for (int t = 0; t < 60; ++t) {
    RadicalScalar s = random_scalar(rng, 3);
    RadicalScalar back = scalar_parse(scalar_to_string(s));
    CHECK(back.equals(s));
  }
  CHECK_THROWS_AS(scalar_parse(""), std::invalid_argument);
  CHECK_THROWS_AS(scalar_parse("(1)*sqrt{v"), std::invalid_argument);
  CHECK_THROWS_AS(scalar_parse("(1)"), std::invalid_argument);
}

TEST_CASE("pure rational detection") {
  RadicalScalar r = RadicalScalar::from_rational(Rational(3, 2));
  REQUIRE(r.rational_part_if_pure() != nullptr);
  CHECK(r.rational_part_if_pure()->num == LaurentPoly::from_rational(Rational(3, 2)));
  CHECK(RadicalScalar::zero().rational_part_if_pure() != nullptr);
  CHECK(rad_from_brackets(1, {2}, {}).rational_part_if_pure() == nullptr);
}
