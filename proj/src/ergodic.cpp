#include "collatz/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "collatz/eigenfields.hpp"
#include "collatz/errors.hpp"
#include "collatz/map.hpp"
#include "collatz/transfer.hpp"

namespace collatz {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() { return mix64(state += 0x9e3779b97f4a7c15ULL); }
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
};

std::size_t quotient_death_time(const Integer& d, std::size_t budget) {
  OrbitReport rep = orbit(d, budget);
  if (!rep.quotient_death_time)
    throw BudgetError("death time not found within budget", rep.orbit.size());
  return *rep.quotient_death_time;
}

/// ||S^N t||^2 exactly: sum |c_d|^2 / w(d 2^N).
ExactReal shifted_norm_sq(const RationalVec& t, unsigned N, const Weight& w) {
  Rational acc(0);
  for (const auto& [d, c] : t.entries()) acc += c.abs_sq() * w.inv_rational(d << N);
  return {acc, w.pi_power()};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index * 0x632be59bd9b4e019ULL + 0x9e3779b97f4a7c15ULL));
}

HypercyclicCertificate build_hypercyclic_vector(const std::vector<RationalVec>& targets,
                                                const Rational& eps, const Weight& w,
                                                const HcOptions& opts) {
  if (eps <= 0) throw std::invalid_argument("hypercyclic certificate: eps must be positive");
  if (!w.exact())
    throw PredicateError("hypercyclic certificate: needs an exact weight family");
  if (!w.predicates().dyadic_divergent)
    throw PredicateError("hypercyclic certificate: weight must diverge along doublings");

  HypercyclicCertificate cert;
  cert.targets = targets;
  cert.epsilon = eps;

  // Death times per earlier block, for the annihilation gaps.
  std::vector<std::size_t> death;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::size_t idx = cert.schedule.size();
    unsigned lo = idx == 0 ? 0 : cert.schedule.back() + 1;
    for (std::size_t j = 0; j < idx; ++j) {
      unsigned need = cert.schedule[j] + static_cast<unsigned>(death[j]) + 1;
      lo = std::max(lo, need);
    }
    // eps 2^{-i-1} for condition (a); eps 2^{-(i-j)-1} against block j for (c).
    auto admissible = [&](unsigned N) {
      Rational budget = eps * eps / rational_pow(Rational(2), 2 * long(i) + 2);
      if (!shifted_norm_sq(targets[i], N, w).certified_le(budget)) return false;
      for (std::size_t j = 0; j < idx; ++j) {
        Rational b2 = eps * eps / rational_pow(Rational(2), 2 * long(i - j) + 2);
        if (!shifted_norm_sq(targets[i], N - cert.schedule[j], w).certified_le(b2))
          return false;
      }
      return true;
    };
    unsigned N = lo;
    while (N <= opts.max_shift && !admissible(N)) ++N;
    if (N > opts.max_shift)
      throw BudgetError("hypercyclic certificate: no admissible shift below ceiling", i);
    cert.schedule.push_back(N);

    std::size_t dmax = 0;
    for (const auto& [d, c] : targets[i].entries())
      dmax = std::max(dmax, quotient_death_time(d, opts.death_budget));
    death.push_back(dmax);

    cert.x += doubling_inverse_power(targets[i], N);
  }

  HcVerification v = verify_certificate(cert, w);
  cert.errors = v.errors;
  if (!v.all_within)
    throw std::logic_error("hypercyclic certificate: construction failed verification");
  return cert;
}

HcVerification verify_certificate(const HypercyclicCertificate& cert, const Weight& w) {
  HcVerification out;
  out.all_within = true;
  const Rational eps_sq = cert.epsilon * cert.epsilon;
  for (std::size_t i = 0; i < cert.schedule.size(); ++i) {
    RationalVec reached = apply_T_power(cert.x, cert.schedule[i]);
    ExactReal err = norm_sq(reached - cert.targets[i], w);
    out.errors.push_back(std::sqrt(err.to_double()));
    if (!err.certified_le(eps_sq)) out.all_within = false;
  }
  return out;
}

GaussianMixtureSample sample_invariant(const MixtureShape& shape, std::uint64_t seed,
                                       const Weight& w) {
  if (!w.predicates().dyadic_summable)
    throw PredicateError("sample_invariant: mixture norms need a dyadically summable weight");

  GaussianMixtureSample s;
  s.seed = seed;
  s.max_m = shape.max_m;
  s.atoms_per_m = shape.atoms_per_m;

  double z = 0;
  for (unsigned m = 0; m <= shape.max_m; ++m) z += std::pow(0.25, m);
  const double normalizer = std::sqrt(double(shape.atoms_per_m) * z);

  for (unsigned m = 0; m <= shape.max_m; ++m) {
    for (unsigned l = 0; l < shape.atoms_per_m; ++l) {
      std::uint64_t idx = std::uint64_t(m) * shape.atoms_per_m + l;
      SplitMix rng{derive_seed(seed, idx)};
      double theta = 2.0 * std::numbers::pi * rng.uniform01();
      double r = std::sqrt(-std::log1p(-rng.uniform01()));
      double phi = 2.0 * std::numbers::pi * rng.uniform01();
      MixtureAtom atom;
      atom.m = m;
      atom.mu = {std::cos(theta), std::sin(theta)};
      atom.g = {r * std::cos(phi), r * std::sin(phi)};
      atom.scale = std::pow(0.5, m) / normalizer;
      s.atoms.push_back(atom);
    }
  }
  return s;
}

GaussianMixtureSample apply_T_symbolic(GaussianMixtureSample s) {
  for (MixtureAtom& a : s.atoms) a.g *= a.mu;
  return s;
}

MaterializedSample materialize_sample(const GaussianMixtureSample& s, const Integer& cap,
                                      const Weight& w) {
  MaterializedSample out;
  for (const MixtureAtom& a : s.atoms) {
    FloatVec field = materialize_field_float(a.m, a.mu, cap);
    out.vec += field.scaled(a.scale * a.g);
    // one entry per level for m = 0, two otherwise
    unsigned levels = static_cast<unsigned>(field.support_size() / (a.m == 0 ? 1 : 2));
    double tail = field_tail_norm_sq(a.m, 1.0, levels, w);
    out.truncation_bound += std::abs(a.scale * a.g) * std::sqrt(tail);
  }
  return out;
}

namespace {

/// Two-sample Kolmogorov-Smirnov distance for sorted samples.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    double fa = double(i) / a.size(), fb = double(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

/// Asymptotic two-sided p-value for the two-sample statistic.
double ks_p_value(double d, std::size_t n, std::size_t m) {
  double ne = double(n) * double(m) / double(n + m);
  double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  if (lambda < 1e-3) return 1.0;
  double sum = 0;
  double sign = 1;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

InvarianceReport invariance_test(const MixtureShape& shape, const FloatVec& f,
                                 std::size_t runs, std::uint64_t seed, const Weight& w,
                                 double mismatch) {
  InvarianceReport rep;
  rep.runs = runs;
  if (f.empty()) {
    rep.skipped = true;
    return rep;
  }
  std::vector<double> u_re, u_im, v_re, v_im;
  u_re.reserve(runs);
  u_im.reserve(runs);
  v_re.reserve(runs);
  v_im.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    GaussianMixtureSample su = sample_invariant(shape, derive_seed(seed, 2 * r), w);
    std::complex<double> u = inner(materialize_sample(su, shape.cap, w).vec, f, w);
    u_re.push_back(u.real());
    u_im.push_back(u.imag());

    GaussianMixtureSample sv = sample_invariant(shape, derive_seed(seed, 2 * r + 1), w);
    sv = apply_T_symbolic(sv);
    std::complex<double> v = inner(materialize_sample(sv, shape.cap, w).vec, f, w);
    v_re.push_back(mismatch * v.real());
    v_im.push_back(mismatch * v.imag());
  }
  rep.ks_re = ks_statistic(u_re, v_re);
  rep.p_re = ks_p_value(rep.ks_re, runs, runs);
  rep.ks_im = ks_statistic(u_im, v_im);
  rep.p_im = ks_p_value(rep.ks_im, runs, runs);
  return rep;
}

double visit_frequency(const RationalVec& x, const RationalVec& target, double eps,
                       std::size_t horizon, const Weight& w) {
  if (eps <= 0) throw std::invalid_argument("visit_frequency: eps must be positive");
  std::size_t hits = 0;
  RationalVec y = x;
  for (std::size_t n = 0;; ++n) {
    ExactReal dist = norm_sq(y - target, w);
    if (dist.to_double() < eps * eps) ++hits;
    if (n == horizon) break;
    y = apply_T(y);
  }
  return double(hits) / double(horizon + 1);
}

double visit_frequency(const HypercyclicCertificate& cert, const RationalVec& target,
                       double eps, std::size_t horizon, const Weight& w) {
  return visit_frequency(cert.x, target, eps, horizon, w);
}

}  // namespace collatz
