#include "qcpat/expr.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "qcpat/laurent.hpp"

namespace qcpat {

AffineArg aa_const(long c) {
  AffineArg a;
  a.cst = c;
  return a;
}

AffineArg aa_var(Var v, long scale, long cst) {
  AffineArg a;
  if (scale != 0) a.lin[v] = scale;
  a.cst = cst;
  return a;
}

AffineArg aa_diff(Var x, Var y, long cst) {
  AffineArg a;
  a.cst = cst;
  if (x == y) return a;
  a.lin[x] = 1;
  a.lin[y] = -1;
  return a;
}

AffineArg aa_shift(AffineArg a, long dc) {
  a.cst += dc;
  return a;
}

namespace {
ExprPtr make_node(ExprNode n) {
  return std::make_shared<const ExprNode>(std::move(n));
}
}  // namespace

ExprPtr ex_const(const Rational& c) {
  ExprNode n;
  n.k = NodeK::Const;
  n.cval = c;
  return make_node(std::move(n));
}

ExprPtr ex_long(long c) { return ex_const(Rational(c)); }

ExprPtr ex_var(Var v) {
  ExprNode n;
  n.k = NodeK::VarRef;
  n.var = v;
  return make_node(std::move(n));
}

ExprPtr ex_qpow(const AffineArg& a) {
  ExprNode n;
  n.k = NodeK::QPow;
  n.arg = a;
  return make_node(std::move(n));
}

ExprPtr ex_qbracket(const AffineArg& a) {
  ExprNode n;
  n.k = NodeK::QBracket;
  n.arg = a;
  return make_node(std::move(n));
}

ExprPtr ex_add(std::vector<ExprPtr> ch) {
  ExprNode n;
  n.k = NodeK::Add;
  n.ch = std::move(ch);
  return make_node(std::move(n));
}

ExprPtr ex_mul(std::vector<ExprPtr> ch) {
  ExprNode n;
  n.k = NodeK::Mul;
  n.ch = std::move(ch);
  return make_node(std::move(n));
}

ExprPtr ex_neg(ExprPtr p) {
  ExprNode n;
  n.k = NodeK::Neg;
  n.ch = {std::move(p)};
  return make_node(std::move(n));
}

ExprPtr ex_sub(ExprPtr a, ExprPtr b) {
  return ex_add({std::move(a), ex_neg(std::move(b))});
}

ExprPtr ex_inv(ExprPtr p) {
  ExprNode n;
  n.k = NodeK::Inv;
  n.ch = {std::move(p)};
  return make_node(std::move(n));
}

ExprPtr ex_div(ExprPtr a, ExprPtr b) {
  return ex_mul({std::move(a), ex_inv(std::move(b))});
}

ExprPtr ex_ipow(ExprPtr p, long e) {
  if (e < 0) throw std::invalid_argument("ex_ipow expects e >= 0");
  ExprNode n;
  n.k = NodeK::IPow;
  n.ch = {std::move(p)};
  n.ipow = e;
  return make_node(std::move(n));
}

// --------------------------------------------------------------------------
// FracDomain
// --------------------------------------------------------------------------

std::optional<Rational> FracDomain::arg_value(const AffineArg& a) const {
  long acc = a.cst;
  for (const auto& [v, s] : a.lin) {
    auto it = env.find(v);
    if (it == env.end()) return std::nullopt;
    acc += s * it->second;
  }
  return Rational(acc);
}

std::optional<Frac> FracDomain::var(Var v) const {
  auto it = env.find(v);
  if (it == env.end()) return std::nullopt;
  return Frac::from_rational(Rational(it->second));
}

std::optional<Frac> FracDomain::qpow(const Rational& n) const {
  if (!rat_is_integer(n)) return std::nullopt;
  long e = rat_to_long(n);
  return Frac::from_poly(
      LaurentPoly::monomial(Rational(1), static_cast<int>(2 * e)));
}

std::optional<Frac> FracDomain::qbracket(const Rational& n) const {
  if (!rat_is_integer(n)) return std::nullopt;
  return Frac::from_poly(::qcpat::qbracket(rat_to_long(n)));
}

std::optional<Frac> FracDomain::inv(const Frac& a) {
  if (a.is_zero()) return std::nullopt;
  return a.inverse();
}

// --------------------------------------------------------------------------
// QDomain
// --------------------------------------------------------------------------

std::optional<Rational> QDomain::arg_value(const AffineArg& a) const {
  Rational acc(a.cst);
  for (const auto& [v, s] : a.lin) {
    auto it = env.find(v);
    if (it == env.end()) return std::nullopt;
    acc += Rational(s) * it->second;
  }
  acc.canonicalize();
  return acc;
}

std::optional<Rational> QDomain::var(Var v) const {
  auto it = env.find(v);
  if (it == env.end()) return std::nullopt;
  return it->second;
}

std::optional<Rational> QDomain::qpow(const Rational& n) const {
  if (!rat_is_integer(n)) return std::nullopt;
  if (q0 == 0) return std::nullopt;
  return rat_pow(q0, rat_to_long(n));
}

std::optional<Rational> QDomain::qbracket(const Rational& n) const {
  if (!rat_is_integer(n)) return std::nullopt;
  if (q0 == 0 || q0 == 1 || q0 == -1) return std::nullopt;
  return qbracket_at(rat_to_long(n), q0);
}

std::optional<Rational> QDomain::inv(const Rational& a) {
  if (a == 0) return std::nullopt;
  Rational r = Rational(a.get_den(), a.get_num());
  r.canonicalize();
  return r;
}

// --------------------------------------------------------------------------
// FpDomain
// --------------------------------------------------------------------------

std::uint64_t FpDomain::mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a % P) *
                                    (b % P) % P);
}

std::uint64_t FpDomain::powmod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t acc = 1;
  b %= P;
  while (e > 0) {
    if (e & 1u) acc = mulmod(acc, b);
    b = mulmod(b, b);
    e >>= 1u;
  }
  return acc;
}

std::optional<Rational> FpDomain::arg_value(const AffineArg& a) const {
  long acc = a.cst;
  for (const auto& [v, s] : a.lin) {
    auto it = env.find(v);
    if (it == env.end()) return std::nullopt;
    acc += s * it->second;
  }
  return Rational(acc);
}

std::optional<std::uint64_t> FpDomain::var(Var v) const {
  auto it = env.find(v);
  if (it == env.end()) return std::nullopt;
  long x = it->second;
  long r = x % static_cast<long>(P);
  if (r < 0) r += static_cast<long>(P);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t FpDomain::constant(const Rational& c) const {
  std::uint64_t n = mpz_fdiv_ui(c.get_num().get_mpz_t(), P);
  std::uint64_t d = mpz_fdiv_ui(c.get_den().get_mpz_t(), P);
  return mulmod(n, powmod(d, P - 2));
}

std::optional<std::uint64_t> FpDomain::qpow(const Rational& n) const {
  if (!rat_is_integer(n)) return std::nullopt;
  long e = rat_to_long(n);
  std::uint64_t base = q0 % P;
  if (base == 0) return std::nullopt;
  if (e < 0) {
    base = powmod(base, P - 2);
    e = -e;
  }
  return powmod(base, static_cast<std::uint64_t>(e));
}

std::optional<std::uint64_t> FpDomain::qbracket(const Rational& n) const {
  auto hi = qpow(n);
  auto lo = qpow(-n);
  if (!hi || !lo) return std::nullopt;
  std::uint64_t dq = submod(q0 % P, powmod(q0 % P, P - 2));
  if (dq == 0) return std::nullopt;
  return mulmod(submod(*hi, *lo), powmod(dq, P - 2));
}

std::optional<std::uint64_t> FpDomain::inv(const std::uint64_t& a) {
  std::uint64_t x = a % P;
  if (x == 0) return std::nullopt;
  return powmod(x, P - 2);
}

// --------------------------------------------------------------------------
// Probabilistic identity testing
// --------------------------------------------------------------------------

PitResult pit_equal(const ExprPtr& lhs, const ExprPtr& rhs,
                    const std::vector<Var>& vars, const PitOptions& opt) {
  PitResult res;
  std::mt19937_64 rng(opt.seed ^ 0x9E3779B97F4A7C15ull);
  std::uniform_int_distribution<long> varDist(opt.varLo, opt.varHi);
  std::uniform_int_distribution<std::uint64_t> qDist(2, FpDomain::P - 2);
  int done = 0;
  int resamples = 0;
  while (done < opt.trials) {
    FpDomain dom;
    dom.q0 = qDist(rng);
    for (const auto& v : vars) dom.env[v] = varDist(rng);
    auto l = eval_expr(lhs, dom);
    auto r = eval_expr(rhs, dom);
    if (!l || !r) {
      if (++resamples > opt.maxResamplePerTrial * opt.trials)
        throw std::runtime_error(
            "pit_equal: too many degenerate samples; widen the variable "
            "range");
      continue;
    }
    ++done;
    ++res.samplesUsed;
    if (*l != *r) {
      res.equal = false;
      std::ostringstream w;
      w << "q0=" << dom.q0;
      for (const auto& v : vars) w << " " << v.name() << "=" << dom.env[v];
      res.witness = w.str();
      break;
    }
  }
  std::ostringstream conf;
  if (res.equal) {
    conf << "agreed on " << res.samplesUsed
         << " random evaluations over F_p, p=2^61-1 (heuristic "
            "polynomial-identity evidence; exact verification paths do not "
            "rely on it)";
  } else {
    conf << "disagreed after " << res.samplesUsed << " evaluations";
  }
  res.confidence = conf.str();
  return res;
}

}  // namespace qcpat
