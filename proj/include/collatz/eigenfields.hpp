#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "collatz/coeff_vec.hpp"
#include "collatz/weights.hpp"

namespace collatz {

/// Truncation request for the lacunary eigenvector field attached to (m, mu):
///   m >= 1:  h = sum_n mu^n (z^{(6m+4) 2^n} - z^{(2m+1) 2^n})
///   m == 0:  h = sum_n mu^n z^{2^{n+2}}
/// Both rays of a level are kept or dropped together, so the truncated vector
/// always ends on a complete level.
struct EigenSpec {
  unsigned m = 0;
  RationalComplex mu;
  Integer degree_cap = 16384;
};

/// Does h(m, mu) lie in the weighted space?  Decided symbolically from the
/// family data: the lacunary tail converges iff |mu|^2 < 2^alpha, where alpha
/// is the dyadic growth exponent of the family (1 for classic_bergman, the
/// exponent for power_law/tabulated, 0 for constant).  Equality diverges.
bool membership(unsigned m, const RationalComplex& mu, const Weight& w);
bool membership_abs_sq(const Rational& mu_abs_sq, const Weight& w);

struct Materialized {
  RationalVec vec;
  unsigned levels = 0;  // number of complete levels kept (0 = empty)
  /// Upper bound on the squared norm of the dropped tail.
  double tail_norm_sq_bound = 0;
};

/// Truncated field with a certified tail bound.  Throws PredicateError when
/// membership fails (divergent tail), rather than truncating silently.
Materialized materialize(const EigenSpec& spec, const Weight& w);

/// Truncation only, no membership or tail analysis (used for the formal
/// eigen-relation check, which is weight-independent).
RationalVec materialize_raw(const EigenSpec& spec);

/// Float-scalar truncation for sampled unimodular mu.
FloatVec materialize_field_float(unsigned m, std::complex<double> mu, const Integer& cap);

/// Upper bound on sum_{n >= levels_kept} |mu|^{2n} (1/w of the level degrees):
/// the squared norm of everything dropped past the first levels_kept levels.
double field_tail_norm_sq(unsigned m, double mu_abs_sq, unsigned levels_kept,
                          const Weight& w);

/// Largest degree whose coefficient after `steps` applications of the transfer
/// operator is unaffected by truncating the field at degree_cap.
Integer truncation_safe_window(unsigned m, const Integer& cap, unsigned steps = 1);

struct EigenResidualReport {
  Integer window_max;            // residual checked on degrees <= window_max
  bool residual_zero = false;    // exact zero on the window
  Rational residual_max_abs_sq;  // max |coefficient|^2 on the window
  std::size_t checked_degrees = 0;
};

/// Verify apply_T(h) == mu h exactly on the truncation-safe window.
EigenResidualReport verify_eigenrelation(const EigenSpec& spec);

struct PeriodicPoint {
  unsigned m = 0;
  Rational alpha;       // mu = exp(i pi alpha)
  unsigned period = 1;  // 2q / gcd(p, 2q) for alpha = p/q
  bool exact = false;   // mu in {1, -1, i, -i}: exact rational vector
  RationalVec vec_exact;
  FloatVec vec_float;
  std::complex<double> mu;
};

/// Periodic vector for the transfer operator: the field at mu = exp(i pi alpha)
/// with rational alpha.  apply_T_power(vec, period) == vec on the safe window.
PeriodicPoint periodic_point(unsigned m, const Rational& alpha, const Integer& cap);

struct WitnessReport {
  Rational rho;
  /// Certified members with |mu| < 1 (contraction side).
  std::vector<EigenSpec> inner_grid;
  /// Certified members with 1 < |mu| (expansion side), |mu|^2 < rho.
  std::vector<EigenSpec> outer_grid;
};

/// Eigenvalue witnesses on both sides of the unit circle, as needed for the
/// standard hypercyclicity criterion.  Requires a bounded-below family whose
/// dyadic growth admits the given rho: rho <= 2^alpha and rho > 1.
WitnessReport godefroy_shapiro_witnesses(const Weight& w, const Rational& rho,
                                         unsigned m_max = 3,
                                         const Integer& cap = 16384);

struct SpanResidualReport {
  double residual_sq = 0;     // squared distance from z^k to the span
  double target_norm_sq = 0;  // ||z^k||^2 for reference
  double condition = 1;       // singular value ratio of the Gram matrix
  bool ill_conditioned = false;
  double gram_tail_bound = 0;  // largest series tail left unsummed
};

/// Distance from z^k to the span of the given fields.  Gram entries are summed
/// from the lacunary series directly with tails below 1e-12.
SpanResidualReport span_residual(const Integer& target_degree,
                                 const std::vector<EigenSpec>& family, const Weight& w);

}  // namespace collatz
