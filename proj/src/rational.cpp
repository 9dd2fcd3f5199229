#include "collatz/rational.hpp"

#include <algorithm>
#include <cctype>

namespace collatz {

std::string format_rational(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("parse_rational: empty string");
  if (t[0] == '+') t.erase(0, 1);
  if (t.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      // Accept plain integers and decimal literals like "1.96".
      auto dot = t.find('.');
      if (dot == std::string::npos) return Rational(Integer(t));
      std::string head = t.substr(0, dot), frac = t.substr(dot + 1);
      if (head.empty() || head == "-" || head == "+") head += "0";
      bool neg = head[0] == '-';
      Integer scale = 1;
      for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
      Integer whole(head);
      Integer fpart = frac.empty() ? Integer(0) : Integer(frac);
      Rational r = Rational(boost::multiprecision::abs(whole) * scale + fpart, scale);
      return neg ? -r : r;
    }
    Integer num(t.substr(0, slash));
    Integer den(t.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("parse_rational: malformed input '" + s + "'");
  }
}

std::string format_rational_complex(const RationalComplex& z) {
  if (z.im == 0) return format_rational(z.re);
  std::string imag = format_rational(z.im) + "i";
  if (z.im == 1) imag = "i";
  if (z.im == -1) imag = "-i";
  if (z.re == 0) return imag;
  if (z.im > 0) return format_rational(z.re) + "+" + imag;
  return format_rational(z.re) + imag;
}

RationalComplex parse_rational_complex(const std::string& s) {
  std::string t;
  t.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("parse_rational_complex: empty string");

  // Split at the last '+' or '-' that is not a leading sign and not part of
  // an exponent-free rational (digits and '/' only, so any interior sign is
  // a separator).
  size_t split = std::string::npos;
  for (size_t i = t.size(); i-- > 1;) {
    if (t[i] == '+' || t[i] == '-') {
      split = i;
      break;
    }
  }
  auto parse_part = [](std::string p, bool imag_unit_ok) -> RationalComplex {
    bool imag = false;
    if (!p.empty() && (p.back() == 'i' || p.back() == 'I')) {
      imag = true;
      p.pop_back();
      if (p.empty() || p == "+") p = "1";
      if (p == "-") p = "-1";
    }
    if (!imag_unit_ok && imag)
      throw std::invalid_argument("parse_rational_complex: misplaced imaginary unit");
    Rational v = parse_rational(p);
    return imag ? RationalComplex(Rational(0), v) : RationalComplex(v);
  };

  if (split == std::string::npos) return parse_part(t, true);
  RationalComplex lhs = parse_part(t.substr(0, split), true);
  std::string rest = t.substr(split);  // keeps the sign
  RationalComplex rhs = parse_part(rest, true);
  if (lhs.im != 0 && rhs.im != 0)
    throw std::invalid_argument("parse_rational_complex: two imaginary parts in '" + s + "'");
  return lhs + rhs;
}

}  // namespace collatz
