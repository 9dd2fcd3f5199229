#include "collatz/exact_norm.hpp"

#include <cmath>
#include <future>
#include <set>
#include <thread>

#include "collatz/errors.hpp"

namespace collatz {

namespace {

Integer pow3(unsigned n) {
  Integer v = 1;
  for (unsigned i = 0; i < n; ++i) v *= 3;
  return v;
}

void check_budget(unsigned n, const ExactNormOptions& opts) {
  if (n < 1) throw std::invalid_argument("exact norm recursion needs n >= 1");
  if (n > opts.max_n)
    throw BudgetError("exact norm recursion: n exceeds configured budget", 0);
  if (opts.max_n > 20)
    throw std::invalid_argument("exact norm recursion: budget ceiling above 20 is not supported");
}

}  // namespace

PolySetResult preimage_poly_set(unsigned n, const Integer& r, const ExactNormOptions& opts) {
  check_budget(n, opts);
  const Integer modulus = pow3(n);
  if (r < 0 || r >= modulus)
    throw std::invalid_argument("preimage_poly_set: residue out of range");

  PolySetResult res;
  std::set<AffinePoly> level{{modulus, r}};
  const Integer rp1 = r + 1;
  for (unsigned step = 0; step < n; ++step) {
    std::set<AffinePoly> next;
    auto insert = [&](AffinePoly p) {
      // Certificate carried by the recursion; it is what turns the per-residue
      // supremum into a plain leading-coefficient sum.
      if (p.a * rp1 < modulus * (p.b + 1))
        throw std::logic_error("preimage_poly_set: certificate violated");
      if (!next.insert(std::move(p)).second) ++res.duplicate_count;
    };
    for (const AffinePoly& p : level) {
      insert({2 * p.a, 2 * p.b});
      if (p.b % 3 == 2) {
        if (p.a % 3 != 0)
          throw std::logic_error("preimage_poly_set: odd branch with a not divisible by 3");
        insert({2 * p.a / 3, (2 * p.b - 1) / 3});
      }
    }
    level = std::move(next);
  }
  res.polys.assign(level.begin(), level.end());
  return res;
}

namespace {

struct ResidueChunk {
  Rational best_value;
  std::uint64_t best_r = 0;
  bool valid = false;
  std::size_t total_polys = 0;
  std::size_t duplicates = 0;
};

ResidueChunk run_residues(unsigned n, std::uint64_t lo, std::uint64_t hi,
                          const ExactNormOptions opts) {
  ResidueChunk out;
  const Integer modulus = pow3(n);
  for (std::uint64_t r = lo; r < hi; ++r) {
    PolySetResult ps = preimage_poly_set(n, Integer(r), opts);
    Integer lead_sum = 0;
    for (const AffinePoly& p : ps.polys) lead_sum += p.a;
    Rational value(lead_sum, modulus);
    out.total_polys += ps.polys.size();
    out.duplicates += ps.duplicate_count;
    if (!out.valid || value > out.best_value) {
      out.best_value = std::move(value);
      out.best_r = r;
      out.valid = true;
    }
  }
  return out;
}

}  // namespace

ExactNormReport exact_iterate_norm_report(unsigned n, const ExactNormOptions& opts) {
  check_budget(n, opts);
  const std::uint64_t residues = pow3(n).convert_to<std::uint64_t>();

  unsigned threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, residues));
  if (residues < 243) threads = 1;

  std::vector<ResidueChunk> chunks(threads);
  if (threads == 1) {
    chunks[0] = run_residues(n, 0, residues, opts);
  } else {
    std::vector<std::future<ResidueChunk>> futs;
    const std::uint64_t step = residues / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t lo = t * step;
      std::uint64_t hi = t + 1 == threads ? residues : lo + step;
      futs.push_back(std::async(std::launch::async, run_residues, n, lo, hi, opts));
    }
    for (unsigned t = 0; t < threads; ++t) chunks[t] = futs[t].get();
  }

  ExactNormReport rep;
  rep.n = n;
  bool have = false;
  for (const ResidueChunk& c : chunks) {
    rep.total_polys += c.total_polys;
    rep.duplicate_count += c.duplicates;
    if (!c.valid) continue;
    // Ascending chunk order keeps ties at the smallest residue.
    if (!have || c.best_value > rep.value) {
      rep.value = c.best_value;
      rep.best_r = c.best_r;
      have = true;
    }
  }
  return rep;
}

Rational exact_iterate_norm_sq(unsigned n, const ExactNormOptions& opts) {
  return exact_iterate_norm_report(n, opts).value;
}

double estimated_poly_count(unsigned n) { return std::pow(4.0, n); }

IterateNormReport exact_norm_as_report(unsigned n, const ExactNormOptions& opts) {
  ExactNormReport ex = exact_iterate_norm_report(n, opts);
  IterateNormReport rep;
  rep.n = n;
  rep.best_k = ex.best_r;  // residue class attaining the supremum
  rep.exact_value = ex.value;
  rep.value = to_double(ex.value);
  rep.scan_bound = 0;
  rep.exactness = NormExactness::exact_limit;
  return rep;
}

SpectralBoundTable spectral_radius_table(unsigned n_max, const ExactNormOptions& opts) {
  SpectralBoundTable table;
  table.lower_bound = std::sqrt(2.0);
  for (unsigned n = 1; n <= n_max; ++n) {
    ExactNormReport rep = exact_iterate_norm_report(n, opts);
    double upper = std::pow(to_double(rep.value), 1.0 / (2.0 * n));
    table.rows.push_back({n, rep.value, upper});
  }
  return table;
}

}  // namespace collatz
