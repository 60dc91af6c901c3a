#include "qcpat/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qcpat {

namespace {

Integer gcd_int(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

LaurentPoly LaurentPoly::var() { return monomial(Rational(1), 1); }

LaurentPoly LaurentPoly::from_long(long n) {
  return from_rational(Rational(n));
}

LaurentPoly LaurentPoly::from_rational(const Rational& r) {
  return monomial(r, 0);
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int exp) {
  LaurentPoly p;
  if (c == 0) return p;
  p.minExp = exp;
  p.coeff = {c.get_num()};
  p.den = c.get_den();
  p.normalize();
  return p;
}

bool LaurentPoly::is_one() const {
  return coeff.size() == 1 && minExp == 0 && coeff[0] == 1 && den == 1;
}

int LaurentPoly::low_exp() const {
  if (is_zero()) throw std::domain_error("low_exp of zero");
  return minExp;
}

int LaurentPoly::high_exp() const {
  if (is_zero()) throw std::domain_error("high_exp of zero");
  return minExp + static_cast<int>(coeff.size()) - 1;
}

int LaurentPoly::span() const { return high_exp() - low_exp(); }

Rational LaurentPoly::coefficient_at(int exp) const {
  if (is_zero()) return Rational(0);
  int i = exp - minExp;
  if (i < 0 || i >= static_cast<int>(coeff.size())) return Rational(0);
  Rational r(coeff[i], den);
  r.canonicalize();
  return r;
}

Rational LaurentPoly::leading_coefficient() const {
  return coefficient_at(high_exp());
}

Rational LaurentPoly::constant_value() const {
  if (is_zero()) return Rational(0);
  if (!is_constant()) throw std::domain_error("not a constant");
  return coefficient_at(0);
}

void LaurentPoly::normalize() {
  std::size_t b = 0, e = coeff.size();
  while (b < e && coeff[b] == 0) ++b;
  while (e > b && coeff[e - 1] == 0) --e;
  if (b == e) {
    coeff.clear();
    minExp = 0;
    den = 1;
    return;
  }
  if (b > 0 || e < coeff.size()) {
    coeff = std::vector<Integer>(coeff.begin() + b, coeff.begin() + e);
    minExp += static_cast<int>(b);
  }
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    den = -den;
    for (auto& c : coeff) c = -c;
  }
  Integer g = den;
  for (const auto& c : coeff) {
    g = gcd_int(g, c);
    if (g == 1) break;
  }
  if (g > 1) {
    den /= g;
    for (auto& c : coeff) c /= g;
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coeff) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int lo = std::min(minExp, o.minExp);
  int hi = std::max(minExp + static_cast<int>(coeff.size()),
                    o.minExp + static_cast<int>(o.coeff.size()));
  Integer l = lcm_int(den, o.den);
  Integer sa = l / den, sb = l / o.den;
  std::vector<Integer> out(static_cast<std::size_t>(hi - lo));
  for (std::size_t i = 0; i < coeff.size(); ++i)
    out[static_cast<std::size_t>(minExp - lo) + i] = coeff[i] * sa;
  for (std::size_t i = 0; i < o.coeff.size(); ++i)
    out[static_cast<std::size_t>(o.minExp - lo) + i] += o.coeff[i] * sb;
  minExp = lo;
  coeff = std::move(out);
  den = l;
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  return *this += -o;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  if (is_zero() || o.is_zero()) return *this = zero();
  std::vector<Integer> out(coeff.size() + o.coeff.size() - 1);
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    if (coeff[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeff.size(); ++j) {
      if (o.coeff[j] == 0) continue;
      out[i + j] += coeff[i] * o.coeff[j];
    }
  }
  minExp += o.minExp;
  coeff = std::move(out);
  den *= o.den;
  normalize();
  return *this;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (minExp != o.minExp || coeff.size() != o.coeff.size()) return false;
  if (cmp(den, o.den) != 0) return false;
  for (std::size_t i = 0; i < coeff.size(); ++i)
    if (cmp(coeff[i], o.coeff[i]) != 0) return false;
  return true;
}

bool LaurentPoly::operator<(const LaurentPoly& o) const {
  if (minExp != o.minExp) return minExp < o.minExp;
  if (coeff.size() != o.coeff.size()) return coeff.size() < o.coeff.size();
  if (int c = cmp(den, o.den); c != 0) return c < 0;
  for (std::size_t i = 0; i < coeff.size(); ++i)
    if (int c = cmp(coeff[i], o.coeff[i]); c != 0) return c < 0;
  return false;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly acc = one();
  LaurentPoly b = *this;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0 || is_zero()) return zero();
  LaurentPoly r = *this;
  for (auto& x : r.coeff) x *= c.get_num();
  r.den *= c.get_den();
  r.normalize();
  return r;
}

LaurentPoly LaurentPoly::shifted(int dExp) const {
  if (is_zero()) return zero();
  LaurentPoly r = *this;
  r.minExp += dExp;
  return r;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly r;
  if (is_zero()) return r;
  r.minExp = minExp - 1;
  r.den = den;
  r.coeff.resize(coeff.size());
  for (std::size_t i = 0; i < coeff.size(); ++i)
    r.coeff[i] = coeff[i] * Integer(minExp + static_cast<long>(i));
  r.normalize();
  return r;
}

Rational LaurentPoly::eval_rational(const Rational& v0) const {
  if (is_zero()) return Rational(0);
  if (v0 == 0 && minExp < 0)
    throw std::domain_error("evaluation at 0 with negative exponents");
  Rational acc(0);
  for (std::size_t i = coeff.size(); i-- > 0;) {
    acc *= v0;
    acc += Rational(coeff[i]);
  }
  acc /= Rational(den);
  acc *= rat_pow(v0, minExp);
  acc.canonicalize();
  return acc;
}

std::complex<double> LaurentPoly::eval_complex(
    const std::complex<double>& v0) const {
  if (is_zero()) return {0.0, 0.0};
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = coeff.size(); i-- > 0;) {
    acc = acc * v0 + std::complex<double>(coeff[i].get_d(), 0.0);
  }
  acc /= den.get_d();
  std::complex<double> base = v0;
  int e = minExp;
  if (e < 0) {
    base = 1.0 / v0;
    e = -e;
  }
  std::complex<double> pw(1.0, 0.0);
  for (int i = 0; i < e; ++i) pw *= base;
  return acc * pw;
}

double LaurentPoly::eval_double(double v0) const {
  return eval_complex({v0, 0.0}).real();
}

std::uint64_t LaurentPoly::eval_mod(std::uint64_t v0, std::uint64_t p) const {
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t acc = 1 % p;
    b %= p;
    while (e > 0) {
      if (e & 1u) acc = mulmod(acc, b);
      b = mulmod(b, b);
      e >>= 1u;
    }
    return acc;
  };
  if (is_zero()) return 0;
  std::uint64_t acc = 0;
  for (std::size_t i = coeff.size(); i-- > 0;) {
    std::uint64_t c = mpz_fdiv_ui(coeff[i].get_mpz_t(), p);
    acc = (mulmod(acc, v0 % p) + c) % p;
  }
  std::uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
  if (d == 0) throw std::domain_error("denominator vanishes mod p");
  acc = mulmod(acc, powmod(d, p - 2));
  if (minExp != 0) {
    std::uint64_t base = v0 % p;
    if (minExp < 0) {
      if (base == 0) throw std::domain_error("evaluation at 0 mod p");
      base = powmod(base, p - 2);
    }
    acc = mulmod(acc, powmod(base, static_cast<std::uint64_t>(
                                       minExp < 0 ? -static_cast<long long>(
                                                        minExp)
                                                  : minExp)));
  }
  return acc;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) {
    if (coeff[static_cast<std::size_t>(i)] == 0) continue;
    int e = minExp + i;
    Rational c(coeff[static_cast<std::size_t>(i)], den);
    c.canonicalize();
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    std::string coefStr;
    if (!(mag == 1 && e != 0)) {
      if (mag.get_den() == 1) {
        coefStr = mag.get_num().get_str();
      } else {
        coefStr = "(" + rat_to_string(mag) + ")";
      }
    }
    out += coefStr;
    if (e != 0) {
      out += "v";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  LaurentPoly run() {
    if (s_.empty()) fail("empty polynomial");
    std::map<int, Rational> terms;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (first && peek() == '+') fail("leading '+'");
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto [coefExplicit, mag] = parse_coefficient();
      int exp = 0;
      bool hasVar = false;
      if (pos_ < s_.size() && peek() == 'v') {
        hasVar = true;
        ++pos_;
        if (pos_ < s_.size() && peek() == '^') {
          ++pos_;
          exp = static_cast<int>(parse_int());
        } else {
          exp = 1;
        }
      }
      if (!coefExplicit && !hasVar) fail("expected coefficient or 'v'");
      Rational c = mag * sign;
      terms[exp] += c;
      first = false;
    }
    LaurentPoly p;
    if (terms.empty()) return p;
    Integer l(1);
    for (const auto& [e, c] : terms) {
      Integer g;
      mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
      l = g;
    }
    int lo = terms.begin()->first;
    int hi = terms.rbegin()->first;
    p.minExp = lo;
    p.den = l;
    p.coeff.assign(static_cast<std::size_t>(hi - lo + 1), Integer(0));
    for (const auto& [e, c] : terms)
      p.coeff[static_cast<std::size_t>(e - lo)] =
          c.get_num() * (l / c.get_den());
    p.normalize();
    return p;
  }

 private:
  char peek() const { return s_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("polynomial parse error at position " +
                                std::to_string(pos_) + ": " + msg + " in '" +
                                s_ + "'");
  }

  long parse_int() {
    bool neg = false;
    if (pos_ < s_.size() && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected digits");
    long val = 0;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(peek()))) {
      val = val * 10 + (peek() - '0');
      ++pos_;
    }
    return neg ? -val : val;
  }

  std::string parse_digits() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected digits");
    std::string d;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(peek()))) {
      d += peek();
      ++pos_;
    }
    return d;
  }

  // Returns {explicit coefficient present, magnitude}.
  std::pair<bool, Rational> parse_coefficient() {
    if (pos_ >= s_.size()) fail("expected term");
    if (peek() == '(') {
      ++pos_;
      bool neg = false;
      if (pos_ < s_.size() && peek() == '-') {
        neg = true;
        ++pos_;
      }
      std::string num = parse_digits();
      std::string den;
      if (pos_ < s_.size() && peek() == '/') {
        ++pos_;
        den = parse_digits();
      }
      if (pos_ >= s_.size() || peek() != ')') fail("expected ')'");
      ++pos_;
      Rational r = den.empty() ? Rational(Integer(num))
                               : Rational(Integer(num), Integer(den));
      r.canonicalize();
      if (neg) r = -r;
      return {true, r};
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = parse_digits();
      return {true, Rational(Integer(num))};
    }
    return {false, Rational(1)};
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& s) {
  return PolyParser(s).run();
}

LaurentPoly qbracket(long n) {
  if (n == 0) return LaurentPoly::zero();
  long m = std::labs(n);
  LaurentPoly p;
  p.minExp = static_cast<int>(-2 * (m - 1));
  p.coeff.assign(static_cast<std::size_t>(4 * (m - 1) + 1), Integer(0));
  for (long j = 0; j < m; ++j)
    p.coeff[static_cast<std::size_t>(4 * j)] = (n < 0) ? -1 : 1;
  return p;
}

Rational qbracket_at(long n, const Rational& q0) {
  if (q0 == 0 || q0 == 1 || q0 == -1)
    throw std::domain_error("bracket evaluation at degenerate q");
  Rational num = rat_pow(q0, n) - rat_pow(q0, -n);
  Rational den = q0 - rat_pow(q0, -1);
  Rational r = num / den;
  r.canonicalize();
  return r;
}

namespace {

// Exact division of integer coefficient vectors (ascending powers) by a monic
// divisor; remainder must vanish.
std::vector<Integer> divide_monic(std::vector<Integer> num,
                                  const std::vector<Integer>& den) {
  if (den.empty() || den.back() != 1)
    throw std::logic_error("divisor must be monic");
  const std::size_t db = den.size() - 1;
  if (num.size() < den.size()) throw std::logic_error("degree underflow");
  std::vector<Integer> quot(num.size() - db, Integer(0));
  for (std::size_t i = quot.size(); i-- > 0;) {
    Integer q = num[i + db];
    if (q == 0) continue;
    quot[i] = q;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw std::logic_error("non-exact monic division");
  return quot;
}

std::mutex g_cycloMutex;
std::map<unsigned, LaurentPoly> g_cycloCache;

}  // namespace

const LaurentPoly& cyclotomic(unsigned d) {
  if (d == 0) throw std::domain_error("cyclotomic index must be positive");
  std::lock_guard<std::mutex> lock(g_cycloMutex);
  if (auto it = g_cycloCache.find(d); it != g_cycloCache.end())
    return it->second;
  // Compute Phi_e for every divisor e of d in ascending order:
  // Phi_e = (v^e - 1) / prod_{e' | e, e' < e} Phi_{e'}.
  std::vector<unsigned> divs;
  for (unsigned e = 1; e <= d; ++e)
    if (d % e == 0) divs.push_back(e);
  for (unsigned e : divs) {
    if (g_cycloCache.count(e)) continue;
    std::vector<Integer> num(static_cast<std::size_t>(e) + 1, Integer(0));
    num[0] = -1;
    num[e] = 1;
    for (unsigned e2 : divs) {
      if (e2 >= e || e % e2 != 0) continue;
      const LaurentPoly& phi = g_cycloCache.at(e2);
      std::vector<Integer> dv(phi.coeff.begin(), phi.coeff.end());
      num = divide_monic(std::move(num), dv);
    }
    LaurentPoly p;
    p.minExp = 0;
    p.coeff = std::move(num);
    p.normalize();
    g_cycloCache.emplace(e, std::move(p));
  }
  return g_cycloCache.at(d);
}

std::vector<unsigned> bracket_cyclotomic_indices(long a) {
  if (a < 1) throw std::domain_error("bracket index must be >= 1");
  std::vector<unsigned> out;
  unsigned m = static_cast<unsigned>(4 * a);
  for (unsigned d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    if (d == 1 || d == 2 || d == 4) continue;
    out.push_back(d);
  }
  return out;
}

LaurentPoly bracket_core(long a) {
  if (a < 1) throw std::domain_error("bracket index must be >= 1");
  return qbracket(a).shifted(static_cast<int>(2 * (a - 1)));
}

}  // namespace qcpat
