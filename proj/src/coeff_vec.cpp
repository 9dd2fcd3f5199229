#include "collatz/coeff_vec.hpp"

namespace collatz {

ExactReal norm_sq(const RationalVec& f, const Weight& w) {
  Rational acc(0);
  for (const auto& [d, c] : f.entries()) acc += c.abs_sq() * w.inv_rational(d);
  return {acc, w.pi_power()};
}

double norm_sq(const FloatVec& f, const Weight& w) {
  double acc = 0;
  for (const auto& [d, c] : f.entries()) acc += std::norm(c) * w.inv_value(d);
  return acc;
}

ExactCplx inner(const RationalVec& f, const RationalVec& g, const Weight& w) {
  RationalComplex acc;
  const auto& a = f.entries();
  const auto& b = g.entries();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      acc += w.inv_rational(ia->first) * (ia->second * ib->second.conj());
      ++ia;
      ++ib;
    }
  }
  return {acc, w.pi_power()};
}

std::complex<double> inner(const FloatVec& f, const FloatVec& g, const Weight& w) {
  std::complex<double> acc = 0;
  const auto& a = f.entries();
  const auto& b = g.entries();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      acc += ia->second * std::conj(ib->second) * w.inv_value(ia->first);
      ++ia;
      ++ib;
    }
  }
  return acc;
}

}  // namespace collatz
