#include "collatz/transfer.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <vector>

#include "collatz/errors.hpp"

namespace collatz {

namespace {

template <class Scalar, class Ratio>
CoeffVec<Scalar> adjoint_impl(const CoeffVec<Scalar>& f, Ratio ratio) {
  CoeffVec<Scalar> out;
  for (const auto& [m, c] : f.entries()) {
    for (const Integer& k : preimages(m)) {
      if (k >= 5) out.add_term(k, ratio(k, m) * c);
    }
    if (m == 5) out.add_term(3, ratio(Integer(3), Integer(5)) * c);
  }
  return out;
}

}  // namespace

RationalVec apply_adjoint(const RationalVec& f, const Weight& w) {
  if (!w.exact())
    throw PredicateError("apply_adjoint: exact scalar kind needs an exact weight family");
  return adjoint_impl(f, [&w](const Integer& a, const Integer& b) {
    return RationalComplex(*w.ratio(a, b));
  });
}

FloatVec apply_adjoint(const FloatVec& f, const Weight& w) {
  return adjoint_impl(f, [&w](const Integer& a, const Integer& b) {
    return std::complex<double>(w.value(a) / w.value(b), 0.0);
  });
}

namespace {

struct ScanBest {
  bool valid = false;
  Rational value_q;
  double value_d = 0;
  Integer k;
};

// Improvement means strictly larger value, or equal value at smaller k; the
// ascending scan makes the second case unreachable within one chunk but it is
// what the cross-chunk merge relies on.
void merge_best(ScanBest& into, const ScanBest& cand, bool exact) {
  if (!cand.valid) return;
  if (!into.valid) {
    into = cand;
    return;
  }
  bool better = exact ? cand.value_q > into.value_q : cand.value_d > into.value_d;
  bool equal = exact ? cand.value_q == into.value_q : cand.value_d == into.value_d;
  if (better || (equal && cand.k < into.k)) into = cand;
}

ScanBest scan_range(const Weight& w, unsigned n, std::uint64_t lo, std::uint64_t hi,
                    std::size_t tree_budget) {
  ScanBest best;
  const bool exact = w.exact();
  for (std::uint64_t ku = lo; ku < hi; ++ku) {
    Integer k(ku);
    std::vector<Integer> tree = preimage_tree(k, n, tree_budget);
    ScanBest cand;
    cand.valid = true;
    cand.k = k;
    if (exact) {
      Rational acc(0);
      for (const Integer& j : tree) acc += *w.ratio(j, k);
      cand.value_q = std::move(acc);
    } else {
      double acc = 0;
      double wk = w.value(k);
      for (const Integer& j : tree) acc += w.value(j) / wk;
      cand.value_d = acc;
    }
    merge_best(best, cand, exact);
  }
  return best;
}

}  // namespace

IterateNormReport iterate_norm_scan(const Weight& w, unsigned n, const Integer& k_max,
                                    const ScanOptions& opts) {
  if (n < 1) throw std::invalid_argument("iterate_norm_scan: n must be >= 1");
  if (k_max < 3) throw std::invalid_argument("iterate_norm_scan: k_max must be >= 3");
  const std::uint64_t kmax = k_max.convert_to<std::uint64_t>();

  unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  const std::uint64_t span = kmax - 3 + 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, span));
  // Below this size the spawn cost dominates.
  if (span < 4096) threads = 1;

  std::vector<ScanBest> results(threads);
  if (threads == 1) {
    results[0] = scan_range(w, n, 3, kmax + 1, opts.tree_budget);
  } else {
    std::vector<std::future<ScanBest>> futs;
    const std::uint64_t chunk = span / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t lo = 3 + t * chunk;
      std::uint64_t hi = t + 1 == threads ? kmax + 1 : lo + chunk;
      futs.push_back(std::async(std::launch::async, scan_range, std::cref(w), n, lo, hi,
                                opts.tree_budget));
    }
    for (unsigned t = 0; t < threads; ++t) results[t] = futs[t].get();
  }

  ScanBest best;
  for (const ScanBest& r : results) merge_best(best, r, w.exact());

  IterateNormReport rep;
  rep.n = n;
  rep.best_k = best.k;
  rep.scan_bound = k_max;
  rep.exactness = NormExactness::lower_bound;
  if (w.exact()) {
    rep.exact_value = best.value_q;
    rep.value = to_double(best.value_q);
  } else {
    rep.value = best.value_d;
  }
  return rep;
}

BoundednessReport bounded_on(const Weight& w, const Integer& m_max) {
  return boundedness_check(w, m_max);
}

}  // namespace collatz
