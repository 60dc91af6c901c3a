#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcpat/fraction.hpp"

namespace qcpat {

// A named integer- or field-valued variable, grouped into single-character
// families ("a3", "B1", ...).
struct Var {
  char fam = 'a';
  int idx = 0;
  bool operator==(const Var& o) const { return fam == o.fam && idx == o.idx; }
  bool operator<(const Var& o) const {
    return fam != o.fam ? fam < o.fam : idx < o.idx;
  }
  std::string name() const { return std::string(1, fam) + std::to_string(idx); }
};

// Integer affine combination of variables, used as q-power exponents and
// bracket arguments.
struct AffineArg {
  std::map<Var, long> lin;
  long cst = 0;
};
AffineArg aa_const(long c);
AffineArg aa_var(Var v, long scale = 1, long cst = 0);
AffineArg aa_diff(Var a, Var b, long cst = 0);  // a - b + cst
AffineArg aa_shift(AffineArg a, long dc);

enum class NodeK { Const, VarRef, QPow, QBracket, Add, Mul, Neg, Inv, IPow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Immutable expression tree over the scalar field extended by q and the
// variables.  QPow(a) denotes q^a and QBracket(a) the q-number [a], both with
// integer affine arguments in the variables.  There are no big-operator
// nodes; builders expand all sums and products.
struct ExprNode {
  NodeK k = NodeK::Const;
  Rational cval;           // Const
  Var var{};               // VarRef
  AffineArg arg;           // QPow, QBracket
  std::vector<ExprPtr> ch; // Add, Mul, Neg(1), Inv(1), IPow(1)
  long ipow = 0;           // IPow exponent, >= 0
};

ExprPtr ex_const(const Rational& c);
ExprPtr ex_long(long c);
ExprPtr ex_var(Var v);
ExprPtr ex_qpow(const AffineArg& a);
ExprPtr ex_qbracket(const AffineArg& a);
ExprPtr ex_add(std::vector<ExprPtr> ch);
ExprPtr ex_mul(std::vector<ExprPtr> ch);
ExprPtr ex_neg(ExprPtr p);
ExprPtr ex_sub(ExprPtr a, ExprPtr b);
ExprPtr ex_inv(ExprPtr p);
ExprPtr ex_div(ExprPtr a, ExprPtr b);
ExprPtr ex_ipow(ExprPtr p, long e);

// ---------------------------------------------------------------------------
// Evaluation domains.  A domain D provides:
//   using Value;
//   optional<Rational> arg_value(const AffineArg&);
//   optional<Value>    var(Var);
//   Value              constant(const Rational&);
//   optional<Value>    qpow(const Rational& n);
//   optional<Value>    qbracket(const Rational& n);
//   Value              add/mul(Value, Value);  Value neg(Value);
//   optional<Value>    inv(const Value&);      // nullopt at zero
// eval_expr returns nullopt when any step degenerates (zero inverse,
// non-integer exponent, unbound variable); callers resample.
// ---------------------------------------------------------------------------

// Exact symbolic domain: values are rational functions of v with factored
// denominators; variables take integer values.  Inverses of products are
// distributed factor-by-factor by the evaluator, so denominators stay as
// collections of bracket-sized factors.
struct FracDomain {
  std::map<Var, long> env;
  using Value = Frac;
  std::optional<Rational> arg_value(const AffineArg& a) const;
  std::optional<Value> var(Var v) const;
  Value constant(const Rational& c) const { return Frac::from_rational(c); }
  std::optional<Value> qpow(const Rational& n) const;
  std::optional<Value> qbracket(const Rational& n) const;
  static Value add(const Value& a, const Value& b) { return a + b; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value neg(const Value& a) { return -a; }
  static std::optional<Value> inv(const Value& a);
};

// Exact numeric domain at a rational point q0 (q0 not 0, 1, -1); variables
// take rational values.
struct QDomain {
  Rational q0;
  std::map<Var, Rational> env;
  using Value = Rational;
  std::optional<Rational> arg_value(const AffineArg& a) const;
  std::optional<Value> var(Var v) const;
  Value constant(const Rational& c) const { return c; }
  std::optional<Value> qpow(const Rational& n) const;
  std::optional<Value> qbracket(const Rational& n) const;
  static Value add(const Value& a, const Value& b) { return a + b; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value neg(const Value& a) { return -a; }
  static std::optional<Value> inv(const Value& a);
};

// Fast probabilistic domain over F_p, p = 2^61 - 1.  Variables take integer
// values (used both as exponents and, reduced mod p, as field values).
struct FpDomain {
  static constexpr std::uint64_t P = (std::uint64_t(1) << 61) - 1;
  std::uint64_t q0 = 3;
  std::map<Var, long> env;
  using Value = std::uint64_t;
  static Value mulmod(Value a, Value b);
  static Value powmod(Value b, std::uint64_t e);
  static Value addmod(Value a, Value b) { return (a + b) % P; }
  static Value submod(Value a, Value b) { return (a + P - b) % P; }
  std::optional<Rational> arg_value(const AffineArg& a) const;
  std::optional<Value> var(Var v) const;
  Value constant(const Rational& c) const;
  std::optional<Value> qpow(const Rational& n) const;
  std::optional<Value> qbracket(const Rational& n) const;
  static Value add(const Value& a, const Value& b) { return addmod(a, b); }
  static Value mul(const Value& a, const Value& b) { return mulmod(a, b); }
  static Value neg(const Value& a) { return (P - a % P) % P; }
  static std::optional<Value> inv(const Value& a);
};

namespace detail {
template <class D>
std::optional<typename D::Value> eval_node(const ExprPtr& p, D& dom);

// Inverse of a subtree, distributing over Mul/IPow/Neg so factored structure
// survives in domains whose values carry factored denominators.
template <class D>
std::optional<typename D::Value> eval_node_inv(const ExprPtr& p, D& dom) {
  using V = typename D::Value;
  if (!p) return std::nullopt;
  switch (p->k) {
    case NodeK::Mul: {
      std::optional<V> acc;
      for (const auto& c : p->ch) {
        auto x = eval_node_inv(c, dom);
        if (!x) return std::nullopt;
        acc = acc ? std::optional<V>(D::mul(*acc, *x)) : x;
      }
      return acc ? acc : std::optional<V>(dom.constant(Rational(1)));
    }
    case NodeK::Neg: {
      auto x = eval_node_inv(p->ch[0], dom);
      if (!x) return std::nullopt;
      return D::neg(*x);
    }
    case NodeK::IPow: {
      auto x = eval_node_inv(p->ch[0], dom);
      if (!x) return std::nullopt;
      V acc = dom.constant(Rational(1));
      for (long i = 0; i < p->ipow; ++i) acc = D::mul(acc, *x);
      return acc;
    }
    case NodeK::Inv:
      return eval_node(p->ch[0], dom);
    default: {
      auto x = eval_node(p, dom);
      if (!x) return std::nullopt;
      return D::inv(*x);
    }
  }
}

template <class D>
std::optional<typename D::Value> eval_node(const ExprPtr& p, D& dom) {
  using V = typename D::Value;
  if (!p) return std::nullopt;
  switch (p->k) {
    case NodeK::Const:
      return dom.constant(p->cval);
    case NodeK::VarRef:
      return dom.var(p->var);
    case NodeK::QPow: {
      auto n = dom.arg_value(p->arg);
      if (!n) return std::nullopt;
      return dom.qpow(*n);
    }
    case NodeK::QBracket: {
      auto n = dom.arg_value(p->arg);
      if (!n) return std::nullopt;
      return dom.qbracket(*n);
    }
    case NodeK::Add: {
      std::optional<V> acc;
      for (const auto& c : p->ch) {
        auto x = eval_node(c, dom);
        if (!x) return std::nullopt;
        acc = acc ? std::optional<V>(D::add(*acc, *x)) : x;
      }
      return acc ? acc : std::optional<V>(dom.constant(Rational(0)));
    }
    case NodeK::Mul: {
      std::optional<V> acc;
      for (const auto& c : p->ch) {
        auto x = eval_node(c, dom);
        if (!x) return std::nullopt;
        acc = acc ? std::optional<V>(D::mul(*acc, *x)) : x;
      }
      return acc ? acc : std::optional<V>(dom.constant(Rational(1)));
    }
    case NodeK::Neg: {
      auto x = eval_node(p->ch[0], dom);
      if (!x) return std::nullopt;
      return D::neg(*x);
    }
    case NodeK::Inv:
      return eval_node_inv(p->ch[0], dom);
    case NodeK::IPow: {
      auto x = eval_node(p->ch[0], dom);
      if (!x) return std::nullopt;
      V acc = dom.constant(Rational(1));
      for (long i = 0; i < p->ipow; ++i) acc = D::mul(acc, *x);
      return acc;
    }
  }
  return std::nullopt;
}
}  // namespace detail

template <class D>
std::optional<typename D::Value> eval_expr(const ExprPtr& p, D& dom) {
  return detail::eval_node(p, dom);
}

// ---------------------------------------------------------------------------
// Probabilistic identity testing over F_p with resampling on degenerate
// draws.  Exactness of the main verification paths never relies on this; it
// backs mutation controls and fast spot checks.
// ---------------------------------------------------------------------------
struct PitOptions {
  int trials = 20;
  std::uint64_t seed = 1;
  long varLo = -40;
  long varHi = 40;
  int maxResamplePerTrial = 400;
};
struct PitResult {
  bool equal = true;
  int samplesUsed = 0;
  std::string witness;     // variable assignment of the first failure
  std::string confidence;  // report of the sampling evidence
};
PitResult pit_equal(const ExprPtr& lhs, const ExprPtr& rhs,
                    const std::vector<Var>& vars, const PitOptions& opt);

}  // namespace qcpat
