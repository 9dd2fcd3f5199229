#pragma once

#include <complex>
#include <map>
#include <stdexcept>

#include "collatz/rational.hpp"
#include "collatz/weights.hpp"

namespace collatz {

inline bool scalar_is_zero(const RationalComplex& s) { return s.is_zero(); }
inline bool scalar_is_zero(const std::complex<double>& s) {
  return s.real() == 0.0 && s.imag() == 0.0;
}

/// Finite-support coefficient vector indexed by degrees n >= 3 (the quotient
/// space has no degrees 0..2).  Entries are kept sorted by degree and zero
/// coefficients are pruned, so equal vectors compare equal structurally.
template <class Scalar>
class CoeffVec {
 public:
  using map_type = std::map<Integer, Scalar>;

  CoeffVec() = default;

  static CoeffVec monomial(Integer degree, Scalar c) {
    CoeffVec v;
    v.add_term(degree, c);
    return v;
  }
  static CoeffVec monomial(Integer degree) { return monomial(std::move(degree), Scalar(1)); }

  void add_term(const Integer& degree, const Scalar& c) {
    if (degree < 3) throw std::invalid_argument("CoeffVec: degree must be >= 3");
    if (scalar_is_zero(c)) return;
    auto [it, inserted] = entries_.try_emplace(degree, c);
    if (!inserted) {
      it->second += c;
      if (scalar_is_zero(it->second)) entries_.erase(it);
    }
  }

  const map_type& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  Integer max_degree() const {
    return entries_.empty() ? Integer(0) : entries_.rbegin()->first;
  }

  Scalar coeff(const Integer& degree) const {
    auto it = entries_.find(degree);
    return it == entries_.end() ? Scalar(0) : it->second;
  }

  CoeffVec& operator+=(const CoeffVec& o) {
    for (const auto& [d, c] : o.entries_) add_term(d, c);
    return *this;
  }
  CoeffVec& operator-=(const CoeffVec& o) {
    for (const auto& [d, c] : o.entries_) add_term(d, Scalar(0) - c);
    return *this;
  }
  friend CoeffVec operator+(CoeffVec a, const CoeffVec& b) { return a += b; }
  friend CoeffVec operator-(CoeffVec a, const CoeffVec& b) { return a -= b; }

  CoeffVec scaled(const Scalar& s) const {
    CoeffVec out;
    if (scalar_is_zero(s)) return out;
    for (const auto& [d, c] : entries_) out.entries_.emplace(d, c * s);
    return out;
  }

  friend bool operator==(const CoeffVec&, const CoeffVec&) = default;

 private:
  map_type entries_;
};

using RationalVec = CoeffVec<RationalComplex>;
using FloatVec = CoeffVec<std::complex<double>>;

/// One-way lossy conversion; there is no float -> rational path.
inline FloatVec to_float(const RationalVec& v) {
  FloatVec out;
  for (const auto& [d, c] : v.entries()) out.add_term(d, c.to_complex());
  return out;
}

/// ||f||^2 = sum |c_n|^2 / w(n), exact rational part times pi^{pi_power}.
ExactReal norm_sq(const RationalVec& f, const Weight& w);
double norm_sq(const FloatVec& f, const Weight& w);

/// <f,g> = sum c_f(n) conj(c_g(n)) / w(n).
ExactCplx inner(const RationalVec& f, const RationalVec& g, const Weight& w);
std::complex<double> inner(const FloatVec& f, const FloatVec& g, const Weight& w);

}  // namespace collatz
