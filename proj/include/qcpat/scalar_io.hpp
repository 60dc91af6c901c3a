#pragma once

#include <string>

#include "qcpat/radical.hpp"

namespace qcpat {

// Pinned text grammar for exact scalars:
//
//   scalar := term (" + " term)*
//   term   := ["(-1)*"] "(" N ")" ["/(" D ")"] "*sqrt{" F "}"
//
// where N, D, F are compact Laurent-polynomial strings (see
// LaurentPoly::to_string), N has a positive leading coefficient, D is the
// expanded denominator product, and F is the expanded signed radicand of the
// term.  Zero is "(0)*sqrt{1}".  Terms appear in the scalar's key order.
std::string scalar_to_string(const RadicalScalar& s);

// Inverse of scalar_to_string: accepts the emitted grammar and reconstructs
// an equal scalar value.  Throws std::invalid_argument on malformed input.
RadicalScalar scalar_parse(const std::string& text);

}  // namespace qcpat
