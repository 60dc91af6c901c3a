#pragma once

#include <gmpxx.h>

#include <string>

namespace qcpat {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "a", "-a", or "a/b" (b > 0 after canonicalization).  Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational rat_from_string(const std::string& s);

// "a" when the denominator is 1, otherwise "a/b" with b > 0.
std::string rat_to_string(const Rational& r);

inline bool rat_is_integer(const Rational& r) { return r.get_den() == 1; }

// Requires an integer value that fits in long; throws std::domain_error
// otherwise.
long rat_to_long(const Rational& r);

// Exact integer power with negative exponents allowed for invertible bases.
Rational rat_pow(const Rational& base, long e);

}  // namespace qcpat
