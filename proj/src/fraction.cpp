#include "qcpat/fraction.hpp"

#include <stdexcept>

namespace qcpat {

Frac Frac::operator-() const {
  Frac r = *this;
  r.num = -r.num;
  return r;
}

Frac operator+(const Frac& a, const Frac& b) {
  // Common denominator by per-factor exponent maximum; only the complement
  // factors multiply into each numerator.
  Frac out;
  std::map<LaurentPoly, int> lcm = a.den;
  for (const auto& [f, e] : b.den) {
    auto it = lcm.find(f);
    if (it == lcm.end())
      lcm.emplace(f, e);
    else if (it->second < e)
      it->second = e;
  }
  LaurentPoly na = a.num;
  for (const auto& [f, e] : lcm) {
    int have = 0;
    if (auto it = a.den.find(f); it != a.den.end()) have = it->second;
    if (e > have) na *= f.pow(static_cast<unsigned>(e - have));
  }
  LaurentPoly nb = b.num;
  for (const auto& [f, e] : lcm) {
    int have = 0;
    if (auto it = b.den.find(f); it != b.den.end()) have = it->second;
    if (e > have) nb *= f.pow(static_cast<unsigned>(e - have));
  }
  out.num = na + nb;
  if (!out.num.is_zero()) out.den = std::move(lcm);
  return out;
}

Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }

Frac operator*(const Frac& a, const Frac& b) {
  if (a.is_zero() || b.is_zero()) return Frac::zero();
  Frac out;
  out.num = a.num * b.num;
  out.den = a.den;
  for (const auto& [f, e] : b.den) out.den[f] += e;
  return out;
}

Frac Frac::scaled(const Rational& c) const {
  if (c == 0 || is_zero()) return zero();
  Frac r = *this;
  r.num = r.num.scaled(c);
  return r;
}

Frac Frac::mul_poly(const LaurentPoly& p) const {
  if (p.is_zero() || is_zero()) return zero();
  Frac r = *this;
  r.num *= p;
  return r;
}

Frac Frac::div_poly(const LaurentPoly& f, int e) const {
  if (f.is_zero()) throw std::domain_error("division by zero factor");
  if (e < 0) throw std::domain_error("negative factor exponent");
  if (e == 0 || is_zero()) return *this;
  UnitSplit u = unit_split(f);
  Frac r = *this;
  Rational unitPow = rat_pow(u.unit, e);
  r.num = r.num.scaled(Rational(unitPow.get_den(), unitPow.get_num()))
              .shifted(-u.vExp * e);
  if (!u.core.is_one()) r.den[u.core] += e;
  return r;
}

Frac Frac::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Frac r = Frac::from_poly(den_expanded());
  UnitSplit u = unit_split(num);
  r.num = r.num.scaled(Rational(u.unit.get_den(), u.unit.get_num()))
              .shifted(-u.vExp);
  if (!u.core.is_one()) r.den[u.core] += 1;
  return r;
}

void Frac::reduce() {
  if (is_zero()) {
    den.clear();
    return;
  }
  for (auto it = den.begin(); it != den.end();) {
    bool erased = false;
    while (it->second > 0) {
      auto q = exact_divide(num, it->first);
      if (!q) break;
      num = *q;
      if (--it->second == 0) {
        it = den.erase(it);
        erased = true;
        break;
      }
    }
    if (!erased) ++it;
  }
}

LaurentPoly Frac::den_expanded() const {
  LaurentPoly d = LaurentPoly::one();
  for (const auto& [f, e] : den) d *= f.pow(static_cast<unsigned>(e));
  return d;
}

RatFun Frac::to_ratfun() const { return RatFun::make(num, den_expanded()); }

Rational Frac::eval_rational(const Rational& v0) const {
  Rational acc = num.eval_rational(v0);
  for (const auto& [f, e] : den) {
    Rational fv = f.eval_rational(v0);
    if (fv == 0)
      throw std::domain_error("denominator factor vanishes at sample point");
    acc /= rat_pow(fv, e);
  }
  acc.canonicalize();
  return acc;
}

std::complex<double> Frac::eval_complex(const std::complex<double>& v0) const {
  std::complex<double> acc = num.eval_complex(v0);
  for (const auto& [f, e] : den) {
    std::complex<double> fv = f.eval_complex(v0);
    for (int i = 0; i < e; ++i) acc /= fv;
  }
  return acc;
}

}  // namespace qcpat
