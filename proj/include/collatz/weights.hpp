#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collatz/rational.hpp"

namespace collatz {

enum class WeightFamily : int { classic_bergman, power_law, constant, tabulated };

std::string family_name(WeightFamily f);

struct WeightPredicates {
  bool bounded_below = false;    // inf_n w(n) > 0
  bool dyadic_divergent = false; // w(k 2^n) -> infinity for every k
  bool dyadic_summable = false;  // sum_n 1/w(k 2^n) < infinity for every k
};

/// A positive weight sequence w(n), n >= 3, from one of four families:
///   classic_bergman   w(n) = (n+1)/pi
///   power_law         w(n) = c (n+1)^alpha
///   constant          w(n) = c
///   tabulated         finite table for n < N0, then a power_law tail
/// The factor 1/pi of the Bergman family is carried symbolically: rational
/// queries return the rational part and pi_power() reports the exponent of pi
/// in 1/w(n), so ratios and norm comparisons stay exact.
class Weight {
 public:
  static Weight classic_bergman();
  static Weight power_law(Rational coeff, Rational alpha);
  static Weight constant(Rational value);
  /// table[i] is w(3 + i); beyond the table, w(n) = tail_coeff (n+1)^tail_alpha.
  static Weight tabulated(std::vector<Rational> table, Rational tail_coeff,
                          Rational tail_alpha);

  WeightFamily family() const { return family_; }
  const Rational& coeff() const { return coeff_; }
  const Rational& alpha() const { return alpha_; }
  const std::vector<Rational>& table() const { return table_; }

  double value(const Integer& n) const;
  double inv_value(const Integer& n) const;

  /// True when w(a)/w(b) and the rational part of 1/w(n) are exactly
  /// representable (integer exponents throughout).
  bool exact() const;
  /// Exponent of pi in 1/w(n): 1 for classic_bergman, 0 otherwise.
  int pi_power() const { return family_ == WeightFamily::classic_bergman ? 1 : 0; }
  /// Rational part r(n) with 1/w(n) = r(n) pi^{pi_power()}.  Requires exact().
  Rational inv_rational(const Integer& n) const;
  /// w(a)/w(b) as an exact rational, when the family permits.
  std::optional<Rational> ratio(const Integer& a, const Integer& b) const;

  WeightPredicates predicates() const;

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  Weight() = default;
  WeightFamily family_ = WeightFamily::classic_bergman;
  Rational coeff_{1};
  Rational alpha_{0};
  std::vector<Rational> table_;
};

struct SupremumInfo {
  /// Largest scanned value of the sequence over 1 <= m <= m_max.
  double scanned_sup = 0;
  std::optional<Rational> scanned_sup_exact;
  Integer scanned_argmax;
  /// Supremum over all m when the family admits one in closed form.
  std::optional<double> analytic_sup;
  std::optional<Rational> analytic_sup_exact;
  /// True when the supremum is approached but not attained at finite m.
  bool attained_in_limit = false;
};

/// Boundedness of the transfer operator is equivalent to the boundedness of
/// three sequences; the squared operator norm is the maximum of their suprema:
///   s1(m) = w(6m)/w(3m)
///   s2(m) = w(6m+2)/w(3m+1)
///   s3(m) = (w(6m+4) + w(2m+1))/w(3m+2)
struct BoundednessReport {
  SupremumInfo s1, s2, s3;
  bool bounded = false;
  /// Max of the three suprema (analytic where available, else scanned).
  double norm_sq = 0;
  std::optional<Rational> norm_sq_exact;
  /// Set when only a scanned lower bound is available (tabulated family).
  bool norm_sq_is_lower_bound = false;
};

BoundednessReport boundedness_check(const Weight& w, const Integer& m_max = 10000);

}  // namespace collatz
