#pragma once

#include <cstddef>
#include <vector>

#include "collatz/rational.hpp"
#include "collatz/transfer.hpp"

namespace collatz {

/// Affine polynomial a*x + b over the integers, ordered by (a, b).
struct AffinePoly {
  Integer a;
  Integer b;
  friend bool operator==(const AffinePoly& x, const AffinePoly& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const AffinePoly& x, const AffinePoly& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
};

struct PolySetResult {
  std::vector<AffinePoly> polys;  // sorted, deduplicated
  /// Number of branch words that collided on an identical (a, b) pair.
  /// Expected to stay 0; reported rather than silently collapsed.
  std::size_t duplicate_count = 0;
};

struct ExactNormOptions {
  /// Hard ceiling on n; the polynomial count grows like 4^n.
  unsigned max_n = 10;
};

/// The n-step preimage polynomials of the residue class 3^n x + r:
/// start from {3^n x + r} and apply n times
///   P  ->  2P, and (2P - 1)/3 when P(0) = 2 mod 3.
/// Every member satisfies the certificate a (r+1) >= 3^n (b+1), which makes
/// the per-residue supremum of the weight sums equal to (sum of a) / 3^n.
PolySetResult preimage_poly_set(unsigned n, const Integer& r,
                                const ExactNormOptions& opts = {});

struct ResidueNorm {
  Integer r;
  Rational value;  // sum of leading coefficients / 3^n
};

struct ExactNormReport {
  unsigned n = 1;
  Rational value;          // ||T^n||^2 under the Bergman weight, exact
  Integer best_r;          // smallest residue attaining the max
  std::size_t total_polys = 0;
  std::size_t duplicate_count = 0;
};

/// ||T^n||^2 under the Bergman weight as an exact rational:
/// max over residues r in [0, 3^n) of the leading-coefficient sums.
ExactNormReport exact_iterate_norm_report(unsigned n, const ExactNormOptions& opts = {});
Rational exact_iterate_norm_sq(unsigned n, const ExactNormOptions& opts = {});

/// Rough size of the enumeration (polynomials across all residues).
double estimated_poly_count(unsigned n);

/// iterate_norm_scan-compatible view of the exact value.
IterateNormReport exact_norm_as_report(unsigned n, const ExactNormOptions& opts = {});

struct SpectralRow {
  unsigned n;
  Rational norm_sq;      // exact ||T^n||^2
  double upper_bound;    // norm_sq^{1/(2n)} >= spectral radius
};

/// Bracket for the spectral radius: sqrt(2) from the eigenvalue disc below,
/// the iterate-norm roots from above.
struct SpectralBoundTable {
  std::vector<SpectralRow> rows;
  double lower_bound = 0;  // sqrt(2)
};

SpectralBoundTable spectral_radius_table(unsigned n_max, const ExactNormOptions& opts = {});

}  // namespace collatz
