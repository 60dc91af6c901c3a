#include <random>

#include "doctest.h"
#include "qcpat/laurent.hpp"

using namespace qcpat;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, bool allowZero = true) {
  std::uniform_int_distribution<int> cdist(-5, 5);
  std::uniform_int_distribution<int> edist(-4, 4);
  std::uniform_int_distribution<int> ddist(1, 6);
  std::uniform_int_distribution<int> terms(0, 4);
  LaurentPoly p;
  int n = terms(rng);
  for (int i = 0; i < n; ++i)
    p += LaurentPoly::monomial(Rational(cdist(rng), ddist(rng)), edist(rng));
  if (!allowZero && p.is_zero()) p = LaurentPoly::one();
  return p;
}

}  // namespace

TEST_CASE("bracket basic values") {
  CHECK(qbracket(0).is_zero());
  CHECK(qbracket(1).is_one());
  CHECK(qbracket(2).to_string() == "v^2+v^-2");
  CHECK(qbracket(3).to_string() == "v^4+1+v^-4");
  CHECK(qbracket(-2) == -qbracket(2));
}

TEST_CASE("bracket antisymmetry and value at 1") {
  for (long n = 0; n <= 50; ++n) {
    CHECK(qbracket(-n) == -qbracket(n));
    CHECK(qbracket(n).eval_rational(Rational(1)) == Rational(n));
  }
}

TEST_CASE("bracket matches its defining ratio at rational points") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> ndist(-9, 9);
  const Rational v0(7, 5);
  const Rational q0 = v0 * v0;
  for (int t = 0; t < 40; ++t) {
    long n = ndist(rng);
    CHECK(qbracket(n).eval_rational(v0) == qbracket_at(n, q0));
  }
}

TEST_CASE("ring arithmetic and canonical form") {
  LaurentPoly v = LaurentPoly::var();
  LaurentPoly one = LaurentPoly::one();
  CHECK((v + one) * (v - one) == v * v - one);
  CHECK((v - v).is_zero());
  LaurentPoly p = LaurentPoly::monomial(Rational(2, 4), 3);
  CHECK(p.to_string() == "(1/2)v^3");
  CHECK(p.den == 2);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    LaurentPoly a = random_poly(rng), b = random_poly(rng),
                c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("derivative, shift, pow") {
  LaurentPoly v = LaurentPoly::var();
  LaurentPoly p = v.pow(3) + v.scaled(Rational(2));
  CHECK(p.derivative() ==
        v.pow(2).scaled(Rational(3)) + LaurentPoly::from_long(2));
  CHECK(v.shifted(-2).to_string() == "v^-1");
  CHECK(LaurentPoly::monomial(Rational(1), -2).derivative().to_string() ==
        "-2v^-3");
}

TEST_CASE("evaluation consistency") {
  std::mt19937_64 rng(23);
  const Rational v0(9, 7);
  for (int t = 0; t < 30; ++t) {
    LaurentPoly a = random_poly(rng), b = random_poly(rng);
    CHECK((a * b).eval_rational(v0) ==
          a.eval_rational(v0) * b.eval_rational(v0));
    CHECK((a + b).eval_rational(v0) ==
          a.eval_rational(v0) + b.eval_rational(v0));
  }
  // Modular evaluation agrees with the rational one for integer samples.
  const std::uint64_t p = (std::uint64_t(1) << 61) - 1;
  for (int t = 0; t < 20; ++t) {
    LaurentPoly a = random_poly(rng);
    Rational exact = a.eval_rational(Rational(3));
    std::uint64_t modv = a.eval_mod(3, p);
    std::uint64_t num = mpz_fdiv_ui(exact.get_num().get_mpz_t(), p);
    std::uint64_t den = mpz_fdiv_ui(exact.get_den().get_mpz_t(), p);
    // num * den^-1 mod p computed through the same helper path.
    std::uint64_t deninv = 1, base = den, e = p - 2;
    while (e) {
      if (e & 1u)
        deninv = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(deninv) * base % p);
      base = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(base) * base % p);
      e >>= 1u;
    }
    std::uint64_t expect = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(num) * deninv % p);
    CHECK(modv == expect);
  }
}

TEST_CASE("text round trip") {
  CHECK(LaurentPoly::zero().to_string() == "0");
  CHECK(LaurentPoly::parse("0").is_zero());
  for (const char* s : {"v^4+2v^2-1", "v^-2", "(1/2)v^3-(3/2)", "-v+3", "1",
                        "-1", "2v", "v^10-v^-10"}) {
    CHECK(LaurentPoly::parse(s).to_string() == s);
  }
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    LaurentPoly a = random_poly(rng);
    CHECK(LaurentPoly::parse(a.to_string()) == a);
  }
  CHECK_THROWS_AS(LaurentPoly::parse("v^"), std::invalid_argument);
  CHECK_THROWS_AS(LaurentPoly::parse("1++2"), std::invalid_argument);
  CHECK_THROWS_AS(LaurentPoly::parse(""), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1).to_string() == "v-1");
  CHECK(cyclotomic(2).to_string() == "v+1");
  CHECK(cyclotomic(3).to_string() == "v^2+v+1");
  CHECK(cyclotomic(4).to_string() == "v^2+1");
  CHECK(cyclotomic(6).to_string() == "v^2-v+1");
  CHECK(cyclotomic(8).to_string() == "v^4+1");
  CHECK(cyclotomic(12).to_string() == "v^4-v^2+1");
  // prod_{d | n} Phi_d = v^n - 1.
  for (unsigned n : {6u, 12u, 30u}) {
    LaurentPoly prod = LaurentPoly::one();
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod *= cyclotomic(d);
    LaurentPoly expect = LaurentPoly::monomial(Rational(1), static_cast<int>(n)) -
                         LaurentPoly::one();
    CHECK(prod == expect);
  }
}

TEST_CASE("bracket cyclotomic factorization") {
  CHECK(bracket_cyclotomic_indices(1).empty());
  CHECK(bracket_cyclotomic_indices(2) == std::vector<unsigned>{8});
  CHECK(bracket_cyclotomic_indices(3) == std::vector<unsigned>{3, 6, 12});
  for (long a = 1; a <= 12; ++a) {
    LaurentPoly prod = LaurentPoly::one();
    for (unsigned d : bracket_cyclotomic_indices(a)) prod *= cyclotomic(d);
    CHECK(prod == bracket_core(a));
    CHECK(qbracket(a) == bracket_core(a).shifted(static_cast<int>(2 - 2 * a)));
  }
}
