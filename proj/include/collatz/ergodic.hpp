#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "collatz/coeff_vec.hpp"
#include "collatz/weights.hpp"

namespace collatz {

/// Approximation certificate for a vector whose transfer orbit visits each
/// target: x = sum_i S^{N_i} target_i with the doubling right inverse S.
/// The schedule guarantees, for every block i,
///   (a) ||S^{N_i} target_i|| <= eps 2^{-i-1},
///   (b) T^{N_i} annihilates every earlier block (gaps exceed death times),
///   (c) the later blocks contribute at most eps/2 to ||T^{N_i} x - target_i||.
struct HypercyclicCertificate {
  std::vector<RationalVec> targets;
  Rational epsilon;
  std::vector<unsigned> schedule;  // strictly increasing N_i
  RationalVec x;
  /// Achieved ||T^{N_i} x - target_i||, one per block (decimal mirror).
  std::vector<double> errors;
};

struct HcOptions {
  unsigned max_shift = 1000000;      // ceiling for any N_i
  std::size_t death_budget = 100000; // orbit steps when computing death times
};

/// Build the certificate over the given weight; every inequality in (a)-(c)
/// is certified in exact arithmetic (with rational pi brackets when the family
/// carries a factor of pi).  Throws BudgetError when no admissible N_i exists
/// below the ceiling.
HypercyclicCertificate build_hypercyclic_vector(const std::vector<RationalVec>& targets,
                                                const Rational& eps, const Weight& w,
                                                const HcOptions& opts = {});

struct HcVerification {
  std::vector<double> errors;
  bool all_within = false;  // every achieved error certified <= eps
};

/// Re-verify a certificate from scratch: recompute T^{N_i} x and compare
/// against target_i in exact arithmetic.
HcVerification verify_certificate(const HypercyclicCertificate& cert, const Weight& w);

struct MixtureShape {
  unsigned max_m = 2;       // atoms carry m = 0 .. max_m
  unsigned atoms_per_m = 2;
  Integer cap = 4096;       // materialization degree cap
};

/// One atom of the invariant mixture: the field at (m, mu) with a complex
/// Gaussian amplitude.  The law is invariant under the symbolic transfer
/// action g -> mu g because g is rotation invariant.
struct MixtureAtom {
  unsigned m = 0;
  std::complex<double> mu;  // unimodular
  std::complex<double> g;   // standard complex Gaussian
  double scale = 1;         // 2^{-m} / normalizer
};

struct GaussianMixtureSample {
  std::uint64_t seed = 0;
  unsigned max_m = 0;
  unsigned atoms_per_m = 0;
  std::vector<MixtureAtom> atoms;
};

/// Draw a sample; the stream position of every atom is derived from the pair
/// (seed, atom index) alone, so results are bit-reproducible regardless of
/// evaluation order or thread count.  Requires a dyadically summable family.
GaussianMixtureSample sample_invariant(const MixtureShape& shape, std::uint64_t seed,
                                       const Weight& w);

/// Symbolic transfer action on the mixture: g -> mu g per atom.
GaussianMixtureSample apply_T_symbolic(GaussianMixtureSample s);

struct MaterializedSample {
  FloatVec vec;
  double truncation_bound = 0;  // bound on the norm of the dropped tails
};

MaterializedSample materialize_sample(const GaussianMixtureSample& s, const Integer& cap,
                                      const Weight& w);

struct InvarianceReport {
  std::size_t runs = 0;
  double ks_re = 0, p_re = 1;
  double ks_im = 0, p_im = 1;
  bool skipped = false;  // degenerate functional (zero vector)
};

/// Two-sample Kolmogorov-Smirnov check that <x, f> and <T x, f> have the same
/// law: two independent batches of `runs` samples, the second pushed through
/// the symbolic transfer action before materialization.  `mismatch` scales the
/// second batch and exists for power checks (mismatch != 1 should reject).
InvarianceReport invariance_test(const MixtureShape& shape, const FloatVec& f,
                                 std::size_t runs, std::uint64_t seed, const Weight& w,
                                 double mismatch = 1.0);

/// Fraction of n in [0, horizon] with ||T^n x - target|| < eps.
double visit_frequency(const RationalVec& x, const RationalVec& target, double eps,
                       std::size_t horizon, const Weight& w);
double visit_frequency(const HypercyclicCertificate& cert, const RationalVec& target,
                       double eps, std::size_t horizon, const Weight& w);

// Deterministic splittable stream helpers (shared with tests).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace collatz
