#include "collatz/weights.hpp"

#include <cmath>

#include "collatz/errors.hpp"

namespace collatz {

std::string family_name(WeightFamily f) {
  switch (f) {
    case WeightFamily::classic_bergman: return "classic_bergman";
    case WeightFamily::power_law: return "power_law";
    case WeightFamily::constant: return "constant";
    case WeightFamily::tabulated: return "tabulated";
  }
  return "?";
}

Weight Weight::classic_bergman() {
  Weight w;
  w.family_ = WeightFamily::classic_bergman;
  return w;
}

Weight Weight::power_law(Rational coeff, Rational alpha) {
  if (coeff <= 0) throw std::invalid_argument("power_law weight: coefficient must be positive");
  Weight w;
  w.family_ = WeightFamily::power_law;
  w.coeff_ = std::move(coeff);
  w.alpha_ = std::move(alpha);
  return w;
}

Weight Weight::constant(Rational value) {
  if (value <= 0) throw std::invalid_argument("constant weight: value must be positive");
  Weight w;
  w.family_ = WeightFamily::constant;
  w.coeff_ = std::move(value);
  return w;
}

Weight Weight::tabulated(std::vector<Rational> table, Rational tail_coeff, Rational tail_alpha) {
  for (const Rational& v : table)
    if (v <= 0) throw std::invalid_argument("tabulated weight: table entries must be positive");
  if (tail_coeff <= 0)
    throw std::invalid_argument("tabulated weight: tail coefficient must be positive");
  Weight w;
  w.family_ = WeightFamily::tabulated;
  w.table_ = std::move(table);
  w.coeff_ = std::move(tail_coeff);
  w.alpha_ = std::move(tail_alpha);
  return w;
}

namespace {

bool integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

long to_long_exponent(const Rational& q) {
  return boost::multiprecision::numerator(q).convert_to<long>();
}

}  // namespace

bool Weight::exact() const {
  switch (family_) {
    case WeightFamily::classic_bergman:
    case WeightFamily::constant: return true;
    case WeightFamily::power_law:
    case WeightFamily::tabulated: return integral(alpha_);
  }
  return false;
}

double Weight::value(const Integer& n) const {
  if (n < 3) throw std::invalid_argument("weight: n must be >= 3");
  double np1 = to_double(n) + 1.0;
  switch (family_) {
    case WeightFamily::classic_bergman: return np1 / std::numbers::pi;
    case WeightFamily::power_law: return to_double(coeff_) * std::pow(np1, to_double(alpha_));
    case WeightFamily::constant: return to_double(coeff_);
    case WeightFamily::tabulated: {
      Integer idx = n - 3;
      if (idx < Integer(table_.size())) return to_double(table_[idx.convert_to<std::size_t>()]);
      return to_double(coeff_) * std::pow(np1, to_double(alpha_));
    }
  }
  return 0;
}

double Weight::inv_value(const Integer& n) const { return 1.0 / value(n); }

Rational Weight::inv_rational(const Integer& n) const {
  if (n < 3) throw std::invalid_argument("weight: n must be >= 3");
  if (!exact()) throw PredicateError("weight family does not support exact evaluation");
  switch (family_) {
    case WeightFamily::classic_bergman: return Rational(1, n + 1);
    case WeightFamily::power_law:
      return Rational(1) / (coeff_ * rational_pow(Rational(n + 1), to_long_exponent(alpha_)));
    case WeightFamily::constant: return Rational(1) / coeff_;
    case WeightFamily::tabulated: {
      Integer idx = n - 3;
      if (idx < Integer(table_.size()))
        return Rational(1) / table_[idx.convert_to<std::size_t>()];
      return Rational(1) / (coeff_ * rational_pow(Rational(n + 1), to_long_exponent(alpha_)));
    }
  }
  return Rational(0);
}

std::optional<Rational> Weight::ratio(const Integer& a, const Integer& b) const {
  if (a < 3 || b < 3) throw std::invalid_argument("weight ratio: degrees must be >= 3");
  if (!exact()) return std::nullopt;
  switch (family_) {
    case WeightFamily::classic_bergman: return Rational(a + 1, b + 1);
    case WeightFamily::power_law:
      return rational_pow(Rational(a + 1, b + 1), to_long_exponent(alpha_));
    case WeightFamily::constant: return Rational(1);
    case WeightFamily::tabulated:
      // Both sides are plain rationals; reuse the pointwise values.
      return (Rational(1) / inv_rational(a)) * inv_rational(b);
  }
  return std::nullopt;
}

WeightPredicates Weight::predicates() const {
  switch (family_) {
    case WeightFamily::classic_bergman: return {true, true, true};
    case WeightFamily::constant: return {true, false, false};
    case WeightFamily::power_law:
    case WeightFamily::tabulated:
      if (alpha_ > 0) return {true, true, true};
      if (alpha_ == 0) return {true, false, false};
      return {false, false, false};
  }
  return {};
}

namespace {

struct SeqScan {
  SupremumInfo info;
  bool exact = false;
};

// s(m) for the three boundedness sequences, exact and double variants.
Rational seq_exact(const Weight& w, int which, const Integer& m) {
  switch (which) {
    case 1: return *w.ratio(6 * m, 3 * m);
    case 2: return *w.ratio(6 * m + 2, 3 * m + 1);
    default: return *w.ratio(6 * m + 4, 3 * m + 2) + *w.ratio(2 * m + 1, 3 * m + 2);
  }
}

double seq_double(const Weight& w, int which, const Integer& m) {
  switch (which) {
    case 1: return w.value(6 * m) / w.value(3 * m);
    case 2: return w.value(6 * m + 2) / w.value(3 * m + 1);
    default: return (w.value(6 * m + 4) + w.value(2 * m + 1)) / w.value(3 * m + 2);
  }
}

SupremumInfo scan_sequence(const Weight& w, int which, const Integer& m_max) {
  SupremumInfo info;
  bool exact = w.exact();
  Rational best_q;
  double best_d = -1;
  for (Integer m = 1; m <= m_max; ++m) {
    if (exact) {
      Rational v = seq_exact(w, which, m);
      if (info.scanned_argmax == 0 || v > best_q) {
        best_q = v;
        info.scanned_argmax = m;
      }
    } else {
      double v = seq_double(w, which, m);
      if (v > best_d) {
        best_d = v;
        info.scanned_argmax = m;
      }
    }
  }
  if (exact) {
    info.scanned_sup_exact = best_q;
    info.scanned_sup = to_double(best_q);
  } else {
    info.scanned_sup = best_d;
  }
  return info;
}

void attach_analytic(const Weight& w, BoundednessReport& rep) {
  auto set = [](SupremumInfo& s, std::optional<Rational> exact, double approx, bool in_limit) {
    if (exact) s.analytic_sup_exact = exact;
    s.analytic_sup = approx;
    s.attained_in_limit = in_limit;
  };
  switch (w.family()) {
    case WeightFamily::classic_bergman:
      set(rep.s1, Rational(2), 2.0, true);
      set(rep.s2, Rational(2), 2.0, true);
      set(rep.s3, Rational(8, 3), 8.0 / 3.0, true);
      return;
    case WeightFamily::constant:
      set(rep.s1, Rational(1), 1.0, false);
      set(rep.s2, Rational(1), 1.0, false);
      set(rep.s3, Rational(2), 2.0, false);
      return;
    case WeightFamily::power_law: {
      const Rational& a = w.alpha();
      double ad = to_double(a);
      bool ints = integral(a);
      long e = ints ? to_long_exponent(a) : 0;
      if (a > 0) {
        // All three sequences increase to their limits.
        auto p2 = ints ? std::optional<Rational>(rational_pow(Rational(2), e)) : std::nullopt;
        set(rep.s1, p2, std::pow(2.0, ad), true);
        set(rep.s2, p2, std::pow(2.0, ad), true);
        auto third = ints ? std::optional<Rational>(rational_pow(Rational(2), e) +
                                                    rational_pow(Rational(2, 3), e))
                          : std::nullopt;
        set(rep.s3, third, std::pow(2.0, ad) + std::pow(2.0 / 3.0, ad), true);
      } else if (a == 0) {
        set(rep.s1, Rational(1), 1.0, false);
        set(rep.s2, Rational(1), 1.0, false);
        set(rep.s3, Rational(2), 2.0, false);
      } else {
        // Decreasing sequences: suprema attained at m = 1.
        auto s1 = ints ? std::optional<Rational>(rational_pow(Rational(7, 4), e)) : std::nullopt;
        auto s2 = ints ? std::optional<Rational>(rational_pow(Rational(9, 5), e)) : std::nullopt;
        auto s3 = ints ? std::optional<Rational>(rational_pow(Rational(11, 6), e) +
                                                 rational_pow(Rational(2, 3), e))
                       : std::nullopt;
        set(rep.s1, s1, std::pow(7.0 / 4.0, ad), false);
        set(rep.s2, s2, std::pow(9.0 / 5.0, ad), false);
        set(rep.s3, s3, std::pow(11.0 / 6.0, ad) + std::pow(2.0 / 3.0, ad), false);
      }
      return;
    }
    case WeightFamily::tabulated:
      return;  // scan only; the tail still keeps every sequence bounded
  }
}

}  // namespace

BoundednessReport boundedness_check(const Weight& w, const Integer& m_max) {
  if (m_max < 1) throw std::invalid_argument("boundedness_check: m_max must be >= 1");
  BoundednessReport rep;
  rep.s1 = scan_sequence(w, 1, m_max);
  rep.s2 = scan_sequence(w, 2, m_max);
  rep.s3 = scan_sequence(w, 3, m_max);
  attach_analytic(w, rep);

  // Every family here has uniformly bounded sequences (power-law tails have
  // finite limits for any exponent).
  rep.bounded = true;

  bool all_exact = rep.s1.analytic_sup_exact && rep.s2.analytic_sup_exact &&
                   rep.s3.analytic_sup_exact;
  if (all_exact) {
    Rational norm = *rep.s1.analytic_sup_exact;
    if (*rep.s2.analytic_sup_exact > norm) norm = *rep.s2.analytic_sup_exact;
    if (*rep.s3.analytic_sup_exact > norm) norm = *rep.s3.analytic_sup_exact;
    rep.norm_sq_exact = norm;
    rep.norm_sq = to_double(norm);
  } else if (rep.s1.analytic_sup && rep.s2.analytic_sup && rep.s3.analytic_sup) {
    rep.norm_sq = std::max({*rep.s1.analytic_sup, *rep.s2.analytic_sup, *rep.s3.analytic_sup});
  } else {
    rep.norm_sq = std::max({rep.s1.scanned_sup, rep.s2.scanned_sup, rep.s3.scanned_sup});
    rep.norm_sq_is_lower_bound = true;
  }
  return rep;
}

}  // namespace collatz
