#pragma once

#include <optional>

#include "collatz/coeff_vec.hpp"
#include "collatz/map.hpp"
#include "collatz/weights.hpp"

namespace collatz {

/// Transfer action on coefficients: the coefficient at degree j moves to
/// degree T(j); degrees mapped below 3 are annihilated by the quotient.
template <class Scalar>
CoeffVec<Scalar> apply_T(const CoeffVec<Scalar>& f) {
  CoeffVec<Scalar> out;
  for (const auto& [d, c] : f.entries()) {
    Integer img = collatz_step(d);
    if (img >= 3) out.add_term(img, c);
  }
  return out;
}

template <class Scalar>
CoeffVec<Scalar> apply_T_power(CoeffVec<Scalar> f, unsigned n) {
  for (unsigned i = 0; i < n && !f.empty(); ++i) f = apply_T(f);
  return f;
}

/// Right inverse S z^k = z^{2k}; T(2k) = k, so apply_T(doubling_inverse(f)) == f.
template <class Scalar>
CoeffVec<Scalar> doubling_inverse(const CoeffVec<Scalar>& f) {
  CoeffVec<Scalar> out;
  for (const auto& [d, c] : f.entries()) out.add_term(d << 1, c);
  return out;
}

template <class Scalar>
CoeffVec<Scalar> doubling_inverse_power(CoeffVec<Scalar> f, unsigned n) {
  for (unsigned i = 0; i < n; ++i) f = doubling_inverse(f);
  return f;
}

/// Adjoint with respect to the weighted inner product:
///   (T* f)(z) = (w(3)/w(5)) c_5 z^3 + sum_{k >= 5} (w(k)/w(T(k))) c_{T(k)} z^k.
/// On finite support: each input degree m contributes at its preimages k >= 5
/// with factor w(k)/w(m), and input degree 5 additionally feeds degree 3.
RationalVec apply_adjoint(const RationalVec& f, const Weight& w);
FloatVec apply_adjoint(const FloatVec& f, const Weight& w);

enum class NormExactness : int { lower_bound, exact_limit };

struct IterateNormReport {
  unsigned n = 1;
  Integer best_k;
  /// sup over scanned k of sum_{T^n(j)=k} w(j)/w(k); this equals ||T^n||^2
  /// restricted to the scan range, hence a certified lower bound in general.
  double value = 0;
  std::optional<Rational> exact_value;  // set for exact weight families
  Integer scan_bound;
  NormExactness exactness = NormExactness::lower_bound;
};

struct ScanOptions {
  std::size_t tree_budget = 1000000;
  unsigned threads = 0;  // 0 = pick from hardware
};

/// Scan k in [3, k_max], maximizing the n-th preimage weight sum.  Ties are
/// resolved toward the smallest k.  Deterministic for any thread count.
IterateNormReport iterate_norm_scan(const Weight& w, unsigned n, const Integer& k_max,
                                    const ScanOptions& opts = {});

/// Boundedness verdict for the transfer operator on the weighted space.
BoundednessReport bounded_on(const Weight& w, const Integer& m_max = 10000);

}  // namespace collatz
