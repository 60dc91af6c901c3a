#include "qcpat/polygcd.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcpat {

namespace {

Integer gcd_int(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer content_of(const std::vector<Integer>& c) {
  Integer g(0);
  for (const auto& x : c) {
    g = gcd_int(g, x);
    if (g == 1) break;
  }
  return g;
}

// Integer coefficient vectors (ascending powers) with nonzero leading entry.
using IVec = std::vector<Integer>;

void trim(IVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IVec to_ivec(const LaurentPoly& core) {
  return IVec(core.coeff.begin(), core.coeff.end());
}

LaurentPoly from_ivec_canonical(IVec a) {
  trim(a);
  LaurentPoly p;
  if (a.empty()) return p;
  p.minExp = 0;
  p.coeff = std::move(a);
  p.normalize();
  // Strip v powers and sign so the result is a canonical core.
  if (!p.is_zero()) {
    p.minExp = 0;
    if (p.coeff.back() < 0)
      for (auto& c : p.coeff) c = -c;
  }
  return p;
}

void make_primitive(IVec& a) {
  trim(a);
  if (a.empty()) return;
  Integer g = content_of(a);
  if (a.back() < 0) g = -g;
  if (g != 1)
    for (auto& c : a) c /= g;
}

// Pseudo-remainder of A by B up to a constant factor (deg A >= deg B >= 0).
IVec pseudo_rem(IVec A, const IVec& B) {
  const Integer lb = B.back();
  const std::size_t db = B.size() - 1;
  while (true) {
    trim(A);
    if (A.empty() || A.size() - 1 < db) return A;
    const std::size_t shift = A.size() - 1 - db;
    const Integer la = A.back();
    for (auto& c : A) c *= lb;
    for (std::size_t j = 0; j < B.size(); ++j) A[shift + j] -= la * B[j];
  }
}

}  // namespace

UnitSplit unit_split(const LaurentPoly& p) {
  if (p.is_zero()) throw std::domain_error("unit_split of zero");
  UnitSplit u;
  u.vExp = p.minExp;
  IVec c(p.coeff.begin(), p.coeff.end());
  Integer g = content_of(c);
  if (c.back() < 0) g = -g;
  for (auto& x : c) x /= g;
  u.unit = Rational(g, p.den);
  u.unit.canonicalize();
  u.core.minExp = 0;
  u.core.coeff = std::move(c);
  u.core.den = 1;
  return u;
}

bool is_canonical_core(const LaurentPoly& p) {
  if (p.is_zero()) return false;
  if (p.minExp != 0 || p.den != 1) return false;
  if (p.coeff.back() < 0) return false;
  return content_of(p.coeff) == 1;
}

std::optional<LaurentPoly> exact_divide(const LaurentPoly& a,
                                        const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return LaurentPoly::zero();
  if (a.coeff.size() < b.coeff.size()) return std::nullopt;
  std::vector<Rational> r(a.coeff.size());
  for (std::size_t i = 0; i < a.coeff.size(); ++i) {
    r[i] = Rational(a.coeff[i], a.den);
    r[i].canonicalize();
  }
  std::vector<Rational> d(b.coeff.size());
  for (std::size_t i = 0; i < b.coeff.size(); ++i) {
    d[i] = Rational(b.coeff[i], b.den);
    d[i].canonicalize();
  }
  const std::size_t db = d.size() - 1;
  std::vector<Rational> q(r.size() - db, Rational(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    Rational top = r[i + db];
    if (top == 0) continue;
    Rational c = top / d[db];
    c.canonicalize();
    q[i] = c;
    for (std::size_t j = 0; j < d.size(); ++j) r[i + j] -= c * d[j];
  }
  for (const auto& rem : r)
    if (rem != 0) return std::nullopt;
  // Assemble the quotient with a common denominator.
  Integer l(1);
  for (const auto& c : q) {
    Integer g;
    mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    l = g;
  }
  LaurentPoly out;
  out.minExp = a.minExp - b.minExp;
  out.den = l;
  out.coeff.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    out.coeff[i] = q[i].get_num() * (l / q[i].get_den());
  out.normalize();
  return out;
}

bool divides(const LaurentPoly& b, const LaurentPoly& a) {
  return exact_divide(a, b).has_value();
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly::zero();
  if (a.is_zero()) return unit_split(b).core;
  if (b.is_zero()) return unit_split(a).core;
  IVec A = to_ivec(unit_split(a).core);
  IVec B = to_ivec(unit_split(b).core);
  if (A.size() < B.size()) std::swap(A, B);
  while (true) {
    trim(B);
    if (B.empty()) break;
    if (B.size() == 1) return LaurentPoly::one();
    IVec R = pseudo_rem(A, B);
    make_primitive(R);
    A = std::move(B);
    B = std::move(R);
  }
  make_primitive(A);
  return from_ivec_canonical(std::move(A));
}

std::vector<std::pair<LaurentPoly, int>> squarefree_decompose(
    const LaurentPoly& core) {
  if (!is_canonical_core(core) && !core.is_one())
    throw std::domain_error("squarefree_decompose expects a canonical core");
  std::vector<std::pair<LaurentPoly, int>> out;
  if (core.is_constant()) return out;
  LaurentPoly P = core;
  LaurentPoly Pd = P.derivative();
  LaurentPoly g = poly_gcd(P, Pd);
  if (g.is_one()) {
    out.emplace_back(P, 1);
    return out;
  }
  LaurentPoly w = *exact_divide(P, g);
  LaurentPoly y = *exact_divide(Pd, g);
  int i = 1;
  while (true) {
    LaurentPoly z = y - w.derivative();
    if (z.is_zero()) {
      if (!w.is_constant()) out.emplace_back(unit_split(w).core, i);
      break;
    }
    LaurentPoly f = poly_gcd(w, z);
    if (!f.is_constant()) out.emplace_back(f, i);
    w = *exact_divide(w, f);
    y = *exact_divide(z, f);
    ++i;
  }
  return out;
}

SqfSplit squarefree_split(const LaurentPoly& p) {
  UnitSplit u = unit_split(p);
  SqfSplit s;
  s.unit = u.unit;
  s.vExp = u.vExp;
  s.S = LaurentPoly::one();
  s.F = LaurentPoly::one();
  for (const auto& [f, m] : squarefree_decompose(u.core)) {
    if (m / 2 > 0) s.S *= f.pow(static_cast<unsigned>(m / 2));
    if (m % 2 == 1) s.F *= f;
  }
  return s;
}

namespace {

bool is_probable_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

Integer pollard_brent(const Integer& n) {
  // Brent's cycle-finding variant of Pollard's rho; n must be composite and
  // odd.
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xC0FFEEul);
  while (true) {
    Integer y = rng.get_z_range(n - 3) + 2;
    Integer c = rng.get_z_range(n - 2) + 1;
    Integer m = 128;
    Integer g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
      x = y;
      for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
      Integer k = 0;
      while (k < r && g == 1) {
        ys = y;
        Integer lim = m < (r - k) ? m : (r - k);
        for (Integer i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          Integer d = x - y;
          if (d < 0) d = -d;
          q = q * d % n;
        }
        g = gcd_int(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        Integer d = x - ys;
        if (d < 0) d = -d;
        g = gcd_int(d, n);
      }
    }
    if (g != n) return g;
  }
}

void factor_into(Integer m, std::vector<std::pair<Integer, int>>& out,
                 int mult);

void factor_composite(const Integer& m,
                      std::vector<std::pair<Integer, int>>& out, int mult) {
  Integer d = pollard_brent(m);
  factor_into(d, out, mult);
  factor_into(m / d, out, mult);
}

void factor_into(Integer m, std::vector<std::pair<Integer, int>>& out,
                 int mult) {
  if (m == 1) return;
  if (is_probable_prime(m)) {
    out.emplace_back(m, mult);
    return;
  }
  if (mpz_perfect_square_p(m.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    factor_into(r, out, 2 * mult);
    return;
  }
  factor_composite(m, out, mult);
}

}  // namespace

void int_square_split(const Integer& n, Integer& u, Integer& w) {
  if (n <= 0) throw std::domain_error("int_square_split expects n > 0");
  Integer m = n;
  std::vector<std::pair<Integer, int>> factors;
  for (long d = 2; d <= 10000 && m > 1; d == 2 ? d = 3 : d += 2) {
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(d))) {
      m /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(Integer(d), e);
  }
  if (m > 1) factor_into(m, factors, 1);
  // Merge duplicate primes from the recursive factorization.
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  u = 1;
  w = 1;
  std::size_t i = 0;
  while (i < factors.size()) {
    Integer p = factors[i].first;
    long e = 0;
    while (i < factors.size() && factors[i].first == p) {
      e += factors[i].second;
      ++i;
    }
    for (long k = 0; k < e / 2; ++k) u *= p;
    if (e % 2 == 1) w *= p;
  }
}

int sign_near_one(const LaurentPoly& p) {
  if (p.is_zero()) throw std::domain_error("sign_near_one of zero");
  LaurentPoly cur = p;
  for (int guard = 0; guard < 100000; ++guard) {
    Rational r = cur.eval_rational(Rational(1));
    if (r != 0) return r > 0 ? 1 : -1;
    cur = cur.derivative();
    if (cur.is_zero())
      throw std::logic_error("sign_near_one: exhausted derivatives");
  }
  throw std::logic_error("sign_near_one: did not terminate");
}

}  // namespace qcpat
