#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcpat/laurent.hpp"

namespace qcpat {

// Unit decomposition p = unit * v^vExp * core where core is an integer
// polynomial with content 1, low_exp 0 and positive leading coefficient
// ("canonical core").  Requires p != 0.
struct UnitSplit {
  Rational unit;
  int vExp = 0;
  LaurentPoly core;
};
UnitSplit unit_split(const LaurentPoly& p);

// True iff p is a canonical core polynomial (or the constant 1).
bool is_canonical_core(const LaurentPoly& p);

// Exact quotient a / b, or nullopt when b does not divide a.  b != 0.
std::optional<LaurentPoly> exact_divide(const LaurentPoly& a,
                                        const LaurentPoly& b);
bool divides(const LaurentPoly& b, const LaurentPoly& a);

// Gcd as a canonical core (1 for coprime inputs, 0 iff both inputs are 0).
// Units (rational multiples, powers of v) are ignored.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Square-free decomposition of a canonical core polynomial
// core = prod_k part[k].first ^ part[k].second with pairwise-coprime
// square-free canonical-core factors and strictly increasing multiplicities.
std::vector<std::pair<LaurentPoly, int>> squarefree_decompose(
    const LaurentPoly& core);

// p = unit * v^vExp * S^2 * F with F square-free; S and F canonical cores
// (possibly 1).  Requires p != 0.
struct SqfSplit {
  Rational unit;
  int vExp = 0;
  LaurentPoly S;
  LaurentPoly F;
};
SqfSplit squarefree_split(const LaurentPoly& p);

// n = u^2 * w with w square-free; requires n > 0.
void int_square_split(const Integer& n, Integer& u, Integer& w);

// Sign of p(v) as v -> 1 from above, for p != 0: the sign of the first
// nonzero derivative/Taylor coefficient of p at v = 1.
int sign_near_one(const LaurentPoly& p);

}  // namespace qcpat
