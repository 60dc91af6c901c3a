#include "doctest.h"
#include "qcpat/expr.hpp"
#include "qcpat/laurent.hpp"

using namespace qcpat;

namespace {

const Var kA{'a', 0};
const Var kB{'b', 0};

// [a-1] + [a+1] and [2]*[a]: equal for every integer a.
ExprPtr telescope_lhs() {
  return ex_add({ex_qbracket(aa_var(kA, 1, -1)), ex_qbracket(aa_var(kA, 1, 1))});
}
ExprPtr telescope_rhs() {
  return ex_mul({ex_qbracket(aa_const(2)), ex_qbracket(aa_var(kA))});
}

}  // namespace

TEST_CASE("exact symbolic evaluation of bracket expressions") {
  for (long a = -10; a <= 10; ++a) {
    FracDomain dom;
    dom.env[kA] = a;
    auto l = eval_expr(telescope_lhs(), dom);
    auto r = eval_expr(telescope_rhs(), dom);
    REQUIRE(l.has_value());
    REQUIRE(r.has_value());
    CHECK((*l - *r).is_zero());
  }
}

TEST_CASE("bracket determinant value") {
  // [a]^2 - [a-1][a+1] = 1 for every integer a.
  ExprPtr lhs = ex_sub(
      ex_ipow(ex_qbracket(aa_var(kA)), 2),
      ex_mul({ex_qbracket(aa_var(kA, 1, -1)), ex_qbracket(aa_var(kA, 1, 1))}));
  for (long a : {-7L, -1L, 0L, 1L, 5L}) {
    FracDomain dom;
    dom.env[kA] = a;
    auto v = eval_expr(lhs, dom);
    REQUIRE(v.has_value());
    CHECK(v->equals(Frac::one()));
  }
}

TEST_CASE("inverse distributes over products keeping factored denominators") {
  ExprPtr e = ex_inv(ex_mul({ex_qbracket(aa_var(kA)), ex_qbracket(aa_var(kB))}));
  FracDomain dom;
  dom.env[kA] = 3;
  dom.env[kB] = 4;
  auto v = eval_expr(e, dom);
  REQUIRE(v.has_value());
  CHECK(v->den.size() == 2);  // two distinct bracket cores, not one product
  // Degenerate bracket in a denominator yields nullopt, not a crash.
  dom.env[kB] = 0;
  CHECK(!eval_expr(e, dom).has_value());
}

TEST_CASE("rational point domain") {
  QDomain dom;
  dom.q0 = Rational(3, 2);
  dom.env[kA] = Rational(4);
  auto l = eval_expr(telescope_lhs(), dom);
  auto r = eval_expr(telescope_rhs(), dom);
  REQUIRE(l.has_value());
  REQUIRE(r.has_value());
  CHECK(*l == *r);
  // Field-valued variables: (x - y)(x + y) == x^2 - y^2.
  ExprPtr prod = ex_mul({ex_sub(ex_var(kA), ex_var(kB)),
                         ex_add({ex_var(kA), ex_var(kB)})});
  ExprPtr diff = ex_sub(ex_ipow(ex_var(kA), 2), ex_ipow(ex_var(kB), 2));
  dom.env[kA] = Rational(7, 3);
  dom.env[kB] = Rational(-2, 5);
  CHECK(*eval_expr(prod, dom) == *eval_expr(diff, dom));
}

TEST_CASE("pit accepts true identities and rejects false ones") {
  PitOptions opt;
  opt.trials = 20;
  opt.seed = 99;
  PitResult ok = pit_equal(telescope_lhs(), telescope_rhs(), {kA}, opt);
  CHECK(ok.equal);
  CHECK(ok.samplesUsed == 20);
  // [a] vs [a+1] is not an identity; a random draw separates them fast.
  PitResult bad = pit_equal(ex_qbracket(aa_var(kA)),
                            ex_qbracket(aa_var(kA, 1, 1)), {kA}, opt);
  CHECK(!bad.equal);
  CHECK(!bad.witness.empty());
}

TEST_CASE("pit resamples degenerate draws") {
  // x / x == 1 away from x = 0; zero draws must be resampled, not failed.
  PitOptions opt;
  opt.trials = 10;
  opt.seed = 7;
  opt.varLo = 0;
  opt.varHi = 1;  // half of all draws are degenerate
  PitResult r = pit_equal(ex_div(ex_var(kA), ex_var(kA)), ex_long(1), {kA}, opt);
  CHECK(r.equal);
  CHECK(r.samplesUsed == 10);
}
