#include "qcpat/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qcpat {

Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto checkPart = [](const std::string& part, bool signOk) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (signOk && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string numPart = s, denPart;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    numPart = s.substr(0, slash);
    denPart = s.substr(slash + 1);
    if (!checkPart(denPart, false))
      throw std::invalid_argument("malformed rational literal: " + s);
  }
  if (!checkPart(numPart, true))
    throw std::invalid_argument("malformed rational literal: " + s);
  Rational r;
  if (denPart.empty()) {
    r = Rational(Integer(numPart));
  } else {
    Integer den(denPart);
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    r = Rational(Integer(numPart), den);
  }
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

long rat_to_long(const Rational& r) {
  if (!rat_is_integer(r)) throw std::domain_error("value is not an integer");
  const Integer& n = r.get_num();
  if (!n.fits_slong_p()) throw std::domain_error("integer out of long range");
  return n.get_si();
}

Rational rat_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0) {
    if (e < 0) throw std::domain_error("inverse of zero");
    return Rational(0);
  }
  Rational b = base;
  unsigned long n;
  if (e < 0) {
    b = Rational(base.get_den(), base.get_num());
    b.canonicalize();
    n = static_cast<unsigned long>(-e);
  } else {
    n = static_cast<unsigned long>(e);
  }
  Rational acc(1);
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  acc.canonicalize();
  return acc;
}

}  // namespace qcpat
