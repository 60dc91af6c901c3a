#include "qcpat/scalar_io.hpp"

#include <stdexcept>

namespace qcpat {

namespace {

std::string term_to_string(const RadKey& key, const Frac& coeff) {
  std::string out;
  LaurentPoly num = coeff.num;
  if (!num.is_zero() && num.leading_coefficient() < 0) {
    out += "(-1)*";
    num = -num;
  }
  out += "(" + num.to_string() + ")";
  if (!coeff.den.empty())
    out += "/(" + coeff.den_expanded().to_string() + ")";
  out += "*sqrt{" + key.radicand().to_string() + "}";
  return out;
}

// Scans s from pos (which must point at `open`) to the matching close
// character; returns the enclosed substring and advances pos past the close.
std::string take_bracketed(const std::string& s, std::size_t& pos, char open,
                           char close) {
  if (pos >= s.size() || s[pos] != open)
    throw std::invalid_argument("scalar parse error: expected '" +
                                std::string(1, open) + "' in '" + s + "'");
  int depth = 0;
  std::size_t start = ++pos;
  for (; pos < s.size(); ++pos) {
    if (s[pos] == open) {
      ++depth;
    } else if (s[pos] == close) {
      if (depth == 0) {
        std::string inner = s.substr(start, pos - start);
        ++pos;
        return inner;
      }
      --depth;
    }
  }
  throw std::invalid_argument("scalar parse error: unbalanced '" +
                              std::string(1, open) + "' in '" + s + "'");
}

bool consume(const std::string& s, std::size_t& pos, const std::string& lit) {
  if (s.compare(pos, lit.size(), lit) != 0) return false;
  pos += lit.size();
  return true;
}

RadicalScalar parse_term(const std::string& t) {
  std::size_t pos = 0;
  int sign = 1;
  if (consume(t, pos, "(-1)*")) sign = -1;
  std::string numStr = take_bracketed(t, pos, '(', ')');
  LaurentPoly num = LaurentPoly::parse(numStr);
  Frac coeff = Frac::from_poly(num);
  if (consume(t, pos, "/")) {
    std::string denStr = take_bracketed(t, pos, '(', ')');
    LaurentPoly den = LaurentPoly::parse(denStr);
    if (den.is_zero())
      throw std::invalid_argument("scalar parse error: zero denominator");
    coeff = coeff.div_poly(den);
  }
  if (!consume(t, pos, "*sqrt"))
    throw std::invalid_argument("scalar parse error: expected '*sqrt' in '" +
                                t + "'");
  std::string radStr = take_bracketed(t, pos, '{', '}');
  if (pos != t.size())
    throw std::invalid_argument("scalar parse error: trailing input in '" + t +
                                "'");
  LaurentPoly rad = LaurentPoly::parse(radStr);
  if (rad.is_zero())
    throw std::invalid_argument("scalar parse error: zero radicand");
  if (sign < 0) coeff = coeff.scaled(Rational(-1));
  return rad_make(rad, 1).scaled(coeff);
}

}  // namespace

std::string scalar_to_string(const RadicalScalar& s) {
  if (s.is_zero()) return "(0)*sqrt{1}";
  std::string out;
  for (const auto& [k, c] : s.terms) {
    if (!out.empty()) out += " + ";
    out += term_to_string(k, c);
  }
  return out;
}

RadicalScalar scalar_parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty scalar");
  RadicalScalar acc;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = text.find(" + ", pos);
    std::string piece = next == std::string::npos
                            ? text.substr(pos)
                            : text.substr(pos, next - pos);
    acc += parse_term(piece);
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return acc;
}

}  // namespace qcpat
