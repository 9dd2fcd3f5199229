#include "collatz/eigenfields.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <set>

#include "collatz/errors.hpp"
#include "collatz/transfer.hpp"

namespace collatz {

namespace {

/// Dyadic growth exponent of the family: w(k 2^n) ~ 2^{alpha n}.
Rational growth_exponent(const Weight& w) {
  switch (w.family()) {
    case WeightFamily::classic_bergman: return Rational(1);
    case WeightFamily::power_law:
    case WeightFamily::tabulated: return w.alpha();
    case WeightFamily::constant: return Rational(0);
  }
  return Rational(0);
}

/// One geometric ray of a field: coefficient sign * mu^{e-v} at degree u 2^e
/// for all e >= v, with u odd.
struct Ray {
  Integer u;
  unsigned v;
  int sign;
};

std::vector<Ray> field_rays(unsigned m) {
  if (m == 0) return {{Integer(1), 2, +1}};
  Integer a0 = Integer(6) * m + 4;
  unsigned va = two_adic_valuation(a0);
  return {{a0 >> va, va, +1}, {Integer(2) * m + 1, 0, -1}};
}

/// Number of complete levels with top degree <= cap.
unsigned level_count(unsigned m, const Integer& cap) {
  Integer top = m == 0 ? Integer(4) : Integer(6) * m + 4;
  unsigned n = 0;
  while (top <= cap) {
    ++n;
    top <<= 1;
  }
  return n;
}

Integer level_degree_high(unsigned m, unsigned n) {
  return (m == 0 ? Integer(4) : Integer(6) * m + 4) << n;
}
Integer level_degree_low(unsigned m, unsigned n) {
  return (m == 0 ? Integer(4) : Integer(2) * m + 1) << n;
}

}  // namespace

bool membership_abs_sq(const Rational& mu_abs_sq, const Weight& w) {
  if (mu_abs_sq < 0) throw std::invalid_argument("membership: |mu|^2 must be >= 0");
  Rational alpha = growth_exponent(w);
  Integer p = boost::multiprecision::numerator(alpha);
  Integer q = boost::multiprecision::denominator(alpha);
  // |mu|^2 < 2^{p/q}  <=>  (|mu|^2)^q < 2^p; the boundary case diverges.
  long ql = q.convert_to<long>();
  long pl = p.convert_to<long>();
  return rational_pow(mu_abs_sq, ql) < rational_pow(Rational(2), pl);
}

bool membership(unsigned, const RationalComplex& mu, const Weight& w) {
  return membership_abs_sq(mu.abs_sq(), w);
}

RationalVec materialize_raw(const EigenSpec& spec) {
  RationalVec v;
  unsigned levels = level_count(spec.m, spec.degree_cap);
  RationalComplex mu_pow(1);
  for (unsigned n = 0; n < levels; ++n) {
    if (spec.m == 0) {
      v.add_term(Integer(4) << n, mu_pow);
    } else {
      v.add_term(level_degree_high(spec.m, n), mu_pow);
      v.add_term(level_degree_low(spec.m, n), -mu_pow);
    }
    mu_pow *= spec.mu;
  }
  return v;
}

namespace {

double level_inv_sum(unsigned m, unsigned n, const Weight& w) {
  double s = w.inv_value(level_degree_high(m, n));
  if (m != 0) s += w.inv_value(level_degree_low(m, n));
  return s;
}

std::size_t table_end_degree(const Weight& w) {
  return w.family() == WeightFamily::tabulated ? 3 + w.table().size() : 0;
}

}  // namespace

/// Geometric dominating tail once the one-step ratio drops below 1.
double field_tail_norm_sq(unsigned m, double mu_abs_sq, unsigned start, const Weight& w) {
  double acc = 0;
  double factor = std::pow(mu_abs_sq, start);
  const std::size_t tab_end = table_end_degree(w);
  for (unsigned n = start; n < start + 100000; ++n) {
    double cur = level_inv_sum(m, n, w);
    double term = factor * cur;
    acc += term;
    double next = level_inv_sum(m, n + 1, w);
    if (cur > 0) {
      double q = mu_abs_sq * next / cur;
      bool past_table = tab_end == 0 || level_degree_low(m, n) > Integer(tab_end);
      if (past_table && q < 1) {
        acc += term * q / (1 - q);
        return acc;
      }
    } else {
      return acc;  // weights overflow to +inf: the remaining tail is 0
    }
    factor *= mu_abs_sq;
  }
  return acc;  // unreachable for certified members
}

Materialized materialize(const EigenSpec& spec, const Weight& w) {
  if (!membership(spec.m, spec.mu, w))
    throw PredicateError("materialize: field tail diverges in this weighted space");
  Materialized out;
  out.vec = materialize_raw(spec);
  out.levels = level_count(spec.m, spec.degree_cap);
  out.tail_norm_sq_bound =
      field_tail_norm_sq(spec.m, to_double(spec.mu.abs_sq()), out.levels, w);
  return out;
}

FloatVec materialize_field_float(unsigned m, std::complex<double> mu, const Integer& cap) {
  FloatVec v;
  unsigned levels = level_count(m, cap);
  std::complex<double> mu_pow = 1;
  for (unsigned n = 0; n < levels; ++n) {
    if (m == 0) {
      v.add_term(Integer(4) << n, mu_pow);
    } else {
      v.add_term(level_degree_high(m, n), mu_pow);
      v.add_term(level_degree_low(m, n), -mu_pow);
    }
    mu_pow *= mu;
  }
  return v;
}

Integer truncation_safe_window(unsigned m, const Integer& cap, unsigned steps) {
  unsigned levels = level_count(m, cap);
  if (steps > levels)
    throw std::invalid_argument("truncation_safe_window: cap too small for this many steps");
  // T^s of the truncated field equals mu^s times the field truncated s levels
  // lower, so degrees below level (levels - steps) are unaffected.
  return level_degree_low(m, levels - steps) - 1;
}

EigenResidualReport verify_eigenrelation(const EigenSpec& spec) {
  RationalVec v = materialize_raw(spec);
  if (v.empty())
    throw std::invalid_argument("verify_eigenrelation: degree cap below the first level");
  EigenResidualReport rep;
  rep.window_max = truncation_safe_window(spec.m, spec.degree_cap, 1);
  RationalVec lhs = apply_T(v);
  RationalVec rhs = v.scaled(spec.mu);
  RationalVec residual = lhs - rhs;
  rep.residual_zero = true;
  rep.residual_max_abs_sq = 0;
  for (const auto& [d, c] : residual.entries()) {
    if (d > rep.window_max) break;
    Rational a = c.abs_sq();
    if (a > rep.residual_max_abs_sq) rep.residual_max_abs_sq = a;
    if (!c.is_zero()) rep.residual_zero = false;
  }
  // Count every degree compared, not just those where cancellation failed.
  std::set<Integer> support;
  for (const auto& [d, c] : lhs.entries())
    if (d <= rep.window_max) support.insert(d);
  for (const auto& [d, c] : rhs.entries())
    if (d <= rep.window_max) support.insert(d);
  rep.checked_degrees = support.size();
  return rep;
}

PeriodicPoint periodic_point(unsigned m, const Rational& alpha, const Integer& cap) {
  PeriodicPoint pp;
  pp.m = m;
  pp.alpha = alpha;
  Integer p = boost::multiprecision::numerator(alpha);
  Integer q = boost::multiprecision::denominator(alpha);
  Integer g = boost::multiprecision::gcd(boost::multiprecision::abs(p), 2 * q);
  pp.period = static_cast<unsigned>((2 * q / g).convert_to<unsigned long>());

  double ang = std::numbers::pi * to_double(alpha);
  pp.mu = {std::cos(ang), std::sin(ang)};

  if (q == 1 || q == 2) {
    Integer s = ((p * (2 / q)) % 4 + 4) % 4;  // exponent of i in exp(i pi p/q)
    static const RationalComplex table[4] = {
        RationalComplex(1), RationalComplex(Rational(0), Rational(1)),
        RationalComplex(-1), RationalComplex(Rational(0), Rational(-1))};
    RationalComplex mu_exact = table[s.convert_to<std::size_t>()];
    pp.exact = true;
    pp.mu = mu_exact.to_complex();
    pp.vec_exact = materialize_raw({m, mu_exact, cap});
  } else {
    pp.vec_float = materialize_field_float(m, pp.mu, cap);
  }
  return pp;
}

WitnessReport godefroy_shapiro_witnesses(const Weight& w, const Rational& rho,
                                         unsigned m_max, const Integer& cap) {
  if (!w.predicates().bounded_below)
    throw PredicateError("witnesses: weight family is not bounded below");
  if (rho <= 1)
    throw PredicateError("witnesses: rho must exceed 1");
  {
    // rho^n / w(k 2^n) bounded for every k  <=>  rho <= 2^alpha.
    Rational alpha = growth_exponent(w);
    long pl = boost::multiprecision::numerator(alpha).convert_to<long>();
    long ql = boost::multiprecision::denominator(alpha).convert_to<long>();
    if (rational_pow(rho, ql) > rational_pow(Rational(2), pl))
      throw PredicateError("witnesses: dyadic growth does not admit this rho");
  }

  WitnessReport rep;
  rep.rho = rho;

  std::vector<Rational> low{Rational(1, 2), Rational(3, 4)};
  std::vector<Rational> high;
  high.push_back(2 * rho / (1 + rho));  // always strictly inside (1, sqrt(rho))
  {
    Integer num = boost::multiprecision::numerator(rho);
    Integer den = boost::multiprecision::denominator(rho);
    Integer scaled = num * 1000000 / den;
    Integer p = boost::multiprecision::sqrt(scaled);
    Rational r(p, 1000);
    while (r * r >= rho) r -= Rational(1, 1000);
    if (r > 1 && r != high[0]) high.push_back(r);
  }

  static const RationalComplex dirs[] = {
      RationalComplex(1), RationalComplex(Rational(3, 5), Rational(4, 5)),
      RationalComplex(Rational(0), Rational(1)),
      RationalComplex(Rational(-3, 5), Rational(4, 5))};

  for (unsigned m = 0; m <= m_max; ++m) {
    for (const Rational& r : low)
      for (const RationalComplex& d : dirs) {
        EigenSpec s{m, r * d, cap};
        if (!membership(m, s.mu, w))
          throw std::logic_error("witnesses: inner grid member not certified");
        rep.inner_grid.push_back(std::move(s));
      }
    for (const Rational& r : high)
      for (const RationalComplex& d : dirs) {
        EigenSpec s{m, r * d, cap};
        if (!membership(m, s.mu, w))
          throw std::logic_error("witnesses: outer grid member not certified");
        rep.outer_grid.push_back(std::move(s));
      }
  }
  return rep;
}

namespace {

struct RayF {
  Integer u;
  unsigned v;
  double sign;
  std::complex<double> mu;
};

std::vector<RayF> rays_of(const EigenSpec& s) {
  std::vector<RayF> out;
  for (const Ray& r : field_rays(s.m))
    out.push_back({r.u, r.v, double(r.sign), s.mu.to_complex()});
  return out;
}

/// sum_{e >= max(va, vb)} sa sb mu_a^{e-va} conj(mu_b)^{e-vb} / w(u 2^e)
std::complex<double> ray_inner(const RayF& a, const RayF& b, const Weight& w,
                               double tol, double& tail_bound) {
  if (a.u != b.u) return 0;
  const unsigned e0 = std::max(a.v, b.v);
  std::complex<double> pa = std::pow(std::complex<double>(a.mu), double(e0 - a.v));
  std::complex<double> pb = std::pow(std::conj(b.mu), double(e0 - b.v));
  const double mag = std::abs(a.mu) * std::abs(b.mu);
  const std::size_t tab_end = table_end_degree(w);
  std::complex<double> acc = 0;
  Integer deg = a.u << e0;
  for (unsigned it = 0; it < 100000; ++it) {
    double cur = w.inv_value(deg);
    acc += a.sign * b.sign * pa * pb * cur;
    double next = w.inv_value(deg << 1);
    if (cur <= 0) return acc;
    double q = mag * next / cur;
    bool past_table = tab_end == 0 || deg > Integer(tab_end);
    if (past_table && q < 1) {
      double bound = std::abs(pa * pb) * cur * q / (1 - q);
      if (bound < tol) {
        if (bound > tail_bound) tail_bound = bound;
        return acc;
      }
    }
    pa *= a.mu;
    pb *= std::conj(b.mu);
    deg <<= 1;
  }
  throw PredicateError("span_residual: Gram series did not reach its tail bound");
}

/// Coefficient of the full (untruncated) field at degree k.
std::complex<double> field_coeff_at(const EigenSpec& s, const Integer& k) {
  unsigned e = two_adic_valuation(k);
  Integer u = k >> e;
  std::complex<double> c = 0;
  for (const RayF& r : rays_of(s)) {
    if (r.u == u && e >= r.v)
      c += r.sign * std::pow(std::complex<double>(r.mu), double(e - r.v));
  }
  return c;
}

}  // namespace

SpanResidualReport span_residual(const Integer& target_degree,
                                 const std::vector<EigenSpec>& family, const Weight& w) {
  if (target_degree < 3)
    throw std::invalid_argument("span_residual: target degree must be >= 3");
  for (const EigenSpec& s : family)
    if (!membership(s.m, s.mu, w))
      throw PredicateError("span_residual: family contains a non-member field");

  SpanResidualReport rep;
  rep.target_norm_sq = w.inv_value(target_degree);
  const std::size_t n = family.size();
  if (n == 0) {
    rep.residual_sq = rep.target_norm_sq;
    return rep;
  }

  const double tol = 1e-12;
  Eigen::MatrixXcd G(n, n);
  Eigen::VectorXcd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      std::complex<double> g = 0;
      for (const RayF& ri : rays_of(family[i]))
        for (const RayF& rj : rays_of(family[j]))
          g += ray_inner(ri, rj, w, tol, rep.gram_tail_bound);
      G(i, j) = g;
      G(j, i) = std::conj(g);
    }
    b(i) = std::conj(field_coeff_at(family[i], target_degree)) * w.inv_value(target_degree);
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smax = sv(0), smin = sv(sv.size() - 1);
  rep.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  rep.ill_conditioned = !(smin > smax * 1e-13);

  // Distance^2 = ||t||^2 - b^H G^+ b via the singular decomposition of the
  // Hermitian PSD Gram matrix.
  double reduction = 0;
  Eigen::VectorXcd ub = svd.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > smax * 1e-13) reduction += std::norm(ub(i)) / sv(i);
  }
  rep.residual_sq = std::max(0.0, rep.target_norm_sq - reduction);
  return rep;
}

}  // namespace collatz
