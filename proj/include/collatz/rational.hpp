#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace collatz {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& n) { return n.convert_to<double>(); }

inline bool is_power_of_two(const Integer& n) {
  return n > 0 && (n & (n - 1)) == 0;
}

/// Largest e with 2^e dividing n (n > 0).
inline unsigned two_adic_valuation(const Integer& n) {
  if (n <= 0) throw std::invalid_argument("two_adic_valuation: n must be positive");
  return boost::multiprecision::lsb(n);
}

inline Integer pow2(unsigned e) { return Integer(1) << e; }

/// q^e for integer exponents; e < 0 requires q != 0.
inline Rational rational_pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0 && e < 0) throw std::invalid_argument("rational_pow: zero to negative power");
  Rational base = e > 0 ? q : Rational(1) / q;
  unsigned long n = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
  Rational acc(1);
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

// Rational brackets of pi, used to certify inequalities whose exact value
// carries a single power of pi.  355/113 > pi > 333/106.
inline const Rational& pi_upper() {
  static const Rational v(355, 113);
  return v;
}
inline const Rational& pi_lower() {
  static const Rational v(333, 106);
  return v;
}

/// Complex number with exact rational real and imaginary parts.
struct RationalComplex {
  Rational re;
  Rational im;

  RationalComplex() = default;
  RationalComplex(Rational r) : re(std::move(r)) {}
  RationalComplex(int r) : re(r) {}
  RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  RationalComplex conj() const { return {re, -im}; }
  Rational abs_sq() const { return re * re + im * im; }

  RationalComplex operator-() const { return {-re, -im}; }
  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
  friend RationalComplex operator*(const Rational& s, RationalComplex a) {
    a.re *= s;
    a.im *= s;
    return a;
  }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) = default;

  RationalComplex pow(unsigned long n) const {
    RationalComplex acc(1), base = *this;
    while (n > 0) {
      if (n & 1) acc *= base;
      base *= base;
      n >>= 1;
    }
    return acc;
  }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

/// Exact nonnegative quantity of the form value * pi^pi_power (pi_power in {0,1}).
/// Weighted norms under the Bergman weight carry one factor of pi; rational
/// weight families carry none.
struct ExactReal {
  Rational value;
  int pi_power = 0;

  double to_double() const {
    double v = collatz::to_double(value);
    if (pi_power == 1) return v * std::numbers::pi;
    if (pi_power == -1) return v / std::numbers::pi;
    return v;
  }

  /// Certified comparison against a rational threshold: returns true only when
  /// value*pi^p <= t is provable with the rational pi brackets.
  bool certified_le(const Rational& t) const {
    if (pi_power == 0) return value <= t;
    const Rational& hi = pi_power > 0 ? pi_upper() : pi_lower();
    if (pi_power > 0) return value * hi <= t;
    return value / hi <= t;
  }
  bool certified_lt(const Rational& t) const {
    if (pi_power == 0) return value < t;
    if (pi_power > 0) return value * pi_upper() < t;
    return value / pi_lower() < t;
  }
};

struct ExactCplx {
  RationalComplex value;
  int pi_power = 0;

  std::complex<double> to_complex() const {
    std::complex<double> v = value.to_complex();
    if (pi_power == 1) return v * std::numbers::pi;
    if (pi_power == -1) return v / std::numbers::pi;
    return v;
  }
};

std::string format_rational(const Rational& q);
Rational parse_rational(const std::string& s);

/// "p/q", "p/q+r/si", "-i", "3/4i", ... -> exact complex rational.
RationalComplex parse_rational_complex(const std::string& s);
std::string format_rational_complex(const RationalComplex& z);

}  // namespace collatz
