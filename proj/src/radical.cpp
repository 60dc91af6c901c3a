#include "qcpat/radical.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "qcpat/polygcd.hpp"

namespace qcpat {

namespace {

unsigned totient(unsigned d) {
  unsigned result = d;
  unsigned m = d;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

}  // namespace

LaurentPoly RadKey::radicand() const {
  LaurentPoly p =
      LaurentPoly::monomial(Rational(Integer(sgn) * intPart), vPow);
  for (const auto& f : factors) p *= f;
  return p;
}

bool RadKey::operator==(const RadKey& o) const {
  return sgn == o.sgn && vPow == o.vPow && cmp(intPart, o.intPart) == 0 &&
         factors == o.factors;
}

bool RadKey::operator<(const RadKey& o) const {
  if (int c = cmp(intPart, o.intPart); c != 0) return c < 0;
  if (vPow != o.vPow) return vPow < o.vPow;
  if (sgn != o.sgn) return sgn < o.sgn;
  return std::lexicographical_compare(factors.begin(), factors.end(),
                                      o.factors.begin(), o.factors.end());
}

RadicalScalar RadicalScalar::from_frac(const Frac& c) {
  RadicalScalar s;
  if (!c.is_zero()) s.terms.emplace(RadKey{}, c);
  return s;
}

const Frac* RadicalScalar::rational_part_if_pure() const {
  static const Frac kZero = Frac::zero();
  if (terms.empty()) return &kZero;
  if (terms.size() == 1 && terms.begin()->first.is_unit())
    return &terms.begin()->second;
  return nullptr;
}

RadicalScalar RadicalScalar::operator-() const {
  RadicalScalar r;
  for (const auto& [k, c] : terms) r.terms.emplace(k, -c);
  return r;
}

RadicalScalar operator+(const RadicalScalar& a, const RadicalScalar& b) {
  RadicalScalar r = a;
  for (const auto& [k, c] : b.terms) {
    auto it = r.terms.find(k);
    if (it == r.terms.end()) {
      r.terms.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) r.terms.erase(it);
    }
  }
  return r;
}

RadicalScalar operator-(const RadicalScalar& a, const RadicalScalar& b) {
  return a + (-b);
}

namespace {

// Product of two radical terms: combines the square-free radicands,
// extracting full squares into the coefficient.  Returns the combined key;
// multiplies the extracted content into coeff.
RadKey key_mul(const RadKey& k1, const RadKey& k2, Frac& coeff) {
  RadKey out;
  // Integer parts.
  Integer prod = k1.intPart * k2.intPart;
  if (prod == 1) {
    out.intPart = 1;
  } else {
    Integer u, w;
    int_square_split(prod, u, w);
    out.intPart = w;
    if (u != 1) coeff = coeff.scaled(Rational(u));
  }
  // v powers (each in {0,1}).
  int r = k1.vPow + k2.vPow;
  out.vPow = r % 2;
  if (r >= 2) coeff.num = coeff.num.shifted(1);
  // Polynomial factors: symmetric difference; common factors f contribute
  // |f| = sign_near_one(f) * f to the coefficient.
  std::size_t i = 0, j = 0;
  while (i < k1.factors.size() && j < k2.factors.size()) {
    const LaurentPoly& f1 = k1.factors[i];
    const LaurentPoly& f2 = k2.factors[j];
    if (f1 == f2) {
      coeff = coeff.mul_poly(f1).scaled(Rational(sign_near_one(f1)));
      ++i;
      ++j;
    } else if (f1 < f2) {
      out.factors.push_back(f1);
      ++i;
    } else {
      out.factors.push_back(f2);
      ++j;
    }
  }
  for (; i < k1.factors.size(); ++i) out.factors.push_back(k1.factors[i]);
  for (; j < k2.factors.size(); ++j) out.factors.push_back(k2.factors[j]);
  out.sgn = k1.sgn * k2.sgn;
  return out;
}

}  // namespace

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
  RadicalScalar r;
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      Frac coeff = ca * cb;
      RadKey key = key_mul(ka, kb, coeff);
      if (coeff.is_zero()) continue;
      auto it = r.terms.find(key);
      if (it == r.terms.end()) {
        r.terms.emplace(std::move(key), std::move(coeff));
      } else {
        it->second += coeff;
        if (it->second.is_zero()) r.terms.erase(it);
      }
    }
  }
  return r;
}

RadicalScalar RadicalScalar::scaled(const Frac& c) const {
  RadicalScalar r;
  if (c.is_zero()) return r;
  for (const auto& [k, t] : terms) {
    Frac nc = t * c;
    if (!nc.is_zero()) r.terms.emplace(k, std::move(nc));
  }
  return r;
}

RadicalScalar RadicalScalar::scaled_rational(const Rational& c) const {
  return scaled(Frac::from_rational(c));
}

std::complex<double> RadicalScalar::eval_complex(
    const std::complex<double>& v0) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [k, c] : terms)
    acc += c.eval_complex(v0) * std::sqrt(k.radicand().eval_complex(v0));
  return acc;
}

double RadicalScalar::eval_real(double v0) const {
  double acc = 0.0;
  for (const auto& [k, c] : terms) {
    double rad = k.radicand().eval_double(v0);
    if (rad < 0.0)
      throw std::domain_error("negative radicand at real sample point");
    acc += c.eval_complex({v0, 0.0}).real() * std::sqrt(rad);
  }
  return acc;
}

RadicalScalar rad_make(const LaurentPoly& p, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");
  if (p.is_zero()) return RadicalScalar::zero();
  SqfSplit sp = squarefree_split(p);
  Frac coeff = Frac::one();
  RadKey key;
  // sqrt(|unit|) = sqrt(|a| b) / b for unit = a/b with b > 0.
  {
    Integer a = sp.unit.get_num();
    if (a < 0) a = -a;
    const Integer& b = sp.unit.get_den();
    Integer u, w;
    int_square_split(a * b, u, w);
    key.intPart = w;
    coeff = coeff.scaled(Rational(u, b));
  }
  // sqrt(v^k) = v^((k - r)/2) * sqrt(v^r) with r = k mod 2 in {0,1}.
  {
    int k = sp.vExp;
    int r = ((k % 2) + 2) % 2;
    key.vPow = r;
    coeff.num = coeff.num.shifted((k - r) / 2);
  }
  // sqrt(S^2) = |S| = sign_near_one(S) * S.
  if (!sp.S.is_one())
    coeff = coeff.mul_poly(sp.S).scaled(Rational(sign_near_one(sp.S)));
  // Square-free part: refine against small cyclotomic polynomials so that
  // radicands from independent call sites share factor keys.
  if (!sp.F.is_one()) {
    key.sgn = sign_near_one(sp.F);
    LaurentPoly rest = sp.F;
    for (unsigned d = 1; d <= 256 && !rest.is_one(); ++d) {
      if (totient(d) > static_cast<unsigned>(rest.span())) continue;
      const LaurentPoly& phi = cyclotomic(d);
      if (auto q = exact_divide(rest, phi)) {
        key.factors.push_back(phi);
        rest = *q;
      }
    }
    if (!rest.is_one()) {
      UnitSplit u = unit_split(rest);
      if (u.unit != 1 || u.vExp != 0)
        throw std::logic_error("square-free part lost canonical form");
      key.factors.push_back(u.core);
    }
    std::sort(key.factors.begin(), key.factors.end());
  }
  coeff = coeff.scaled(Rational(sign));
  RadicalScalar out;
  out.terms.emplace(std::move(key), std::move(coeff));
  return out;
}

RadicalScalar rad_from_brackets(int sign, const std::vector<long>& numArgs,
                                const std::vector<long>& denArgs) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");
  for (long a : numArgs)
    if (a == 0) return RadicalScalar::zero();
  for (long b : denArgs)
    if (b == 0)
      throw std::domain_error("vanishing bracket in coefficient denominator");
  // Radicand |prod [a] * prod [b]| and divider prod [b], both expressed by
  // cyclotomic exponents: [x] = v^(2-2x) * prod_{d | 4x, d !| 4} Phi_d.
  std::map<unsigned, int> radExp, denExp;
  long vRad = 0, vDen = 0;
  auto absorb = [](long x, std::map<unsigned, int>& exp, long& vpow) {
    long ax = std::labs(x);
    vpow += 2 - 2 * ax;
    for (unsigned d : bracket_cyclotomic_indices(ax)) exp[d] += 1;
  };
  for (long a : numArgs) absorb(a, radExp, vRad);
  for (long b : denArgs) {
    absorb(b, radExp, vRad);
    absorb(b, denExp, vDen);
  }
  if (vRad % 2 != 0) throw std::logic_error("odd v power in bracket radicand");
  // coefficient = sign * v^(vRad/2 - vDen) * prod Phi^(radExp/2 - cancel)
  //               / prod Phi^(denExp - cancel);
  // key factors are the Phi with odd radicand exponent.
  RadKey key;
  LaurentPoly num = LaurentPoly::monomial(Rational(sign), 0);
  std::map<LaurentPoly, int> den;
  for (const auto& [d, e] : radExp) {
    int outN = e / 2;
    int outD = 0;
    if (auto it = denExp.find(d); it != denExp.end()) outD = it->second;
    int cancel = std::min(outN, outD);
    outN -= cancel;
    outD -= cancel;
    const LaurentPoly& phi = cyclotomic(d);
    if (outN > 0) num *= phi.pow(static_cast<unsigned>(outN));
    if (outD > 0) den.emplace(phi, outD);
    if (e % 2 == 1) key.factors.push_back(phi);
  }
  num = num.shifted(static_cast<int>(vRad / 2 - vDen));
  std::sort(key.factors.begin(), key.factors.end());
  RadicalScalar out;
  out.terms.emplace(std::move(key), Frac{std::move(num), std::move(den)});
  return out;
}

}  // namespace qcpat
