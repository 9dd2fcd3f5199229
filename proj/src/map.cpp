#include "collatz/map.hpp"

#include <algorithm>
#include <set>

#include "collatz/errors.hpp"

namespace collatz {

OrbitReport orbit(const Integer& k, std::size_t max_steps) {
  if (k < 3) throw std::invalid_argument("orbit: start must be >= 3");
  OrbitReport rep;
  rep.start = k;
  std::set<Integer> seen;
  Integer v = k;
  for (std::size_t n = 0;; ++n) {
    rep.orbit.push_back(v);
    if (!rep.hit_power_of_two && is_power_of_two(v)) rep.hit_power_of_two = n;
    if (v < 3) {
      rep.quotient_death_time = n;
      return rep;
    }
    if (!seen.insert(v).second) {
      rep.stopped_on_repeat = true;
      return rep;
    }
    if (n + 1 > max_steps) {
      rep.budget_exhausted = true;
      return rep;
    }
    v = collatz_step(v);
  }
}

std::vector<Integer> preimages(const Integer& k) {
  if (k < 3) throw std::invalid_argument("preimages: k must be >= 3");
  std::vector<Integer> out;
  if (k % 3 == 2) {
    Integer odd = (2 * k - 1) / 3;
    if (odd >= 3) out.push_back(odd);
  }
  out.push_back(2 * k);
  return out;  // odd branch (2k-1)/3 < 2k, so already sorted
}

std::vector<Integer> preimage_tree(const Integer& k, unsigned n, std::size_t max_nodes) {
  if (k < 3) throw std::invalid_argument("preimage_tree: k must be >= 3");
  std::vector<Integer> level{k};
  std::size_t visited = 1;
  for (unsigned depth = 0; depth < n; ++depth) {
    std::vector<Integer> next;
    next.reserve(2 * level.size());
    for (const Integer& v : level) {
      for (Integer& j : preimages(v)) {
        if (++visited > max_nodes)
          throw BudgetError("preimage_tree: node budget exceeded", visited - 1);
        next.push_back(std::move(j));
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

Integer LemmaSequences::tracked_product(std::size_t i) const {
  const Integer& m = m_seq.at(i);
  Integer base = mode == LemmaMode::density ? 6 * m + 4 : 3 * m + 2;
  return base << static_cast<unsigned>(p_seq.at(i));
}

LemmaSequences lemma_sequences(const Integer& k, LemmaMode mode, std::size_t max_steps) {
  if (k < 3) throw std::invalid_argument("lemma_sequences: k must be >= 3");
  if (is_power_of_two(k))
    throw std::invalid_argument("lemma_sequences: k must not be a power of two");

  LemmaSequences seq;
  seq.k = k;
  seq.mode = mode;

  unsigned p = two_adic_valuation(k);
  Integer m = ((k >> p) - 1) >> 1;  // k = (2m+1) 2^p, m >= 1 since k is not 2^p
  std::uint64_t j = p + 1;
  seq.m_seq.push_back(m);
  seq.p_seq.push_back(p);
  seq.j_seq.push_back(j);

  for (std::size_t steps = 1;; ++steps) {
    Integer next = 3 * m + 2;
    if (is_power_of_two(next)) {
      seq.stationary_at = seq.m_seq.size() - 1;
      return seq;
    }
    if (steps >= max_steps) {
      seq.budget_exhausted = true;
      return seq;
    }
    unsigned q = two_adic_valuation(next);
    m = ((next >> q) - 1) >> 1;
    std::uint64_t p_new = q + static_cast<std::uint64_t>(p) + 1;
    j = p_new - p + j;
    p = static_cast<unsigned>(p_new);
    seq.m_seq.push_back(m);
    seq.p_seq.push_back(p_new);
    seq.j_seq.push_back(j);
  }
}

}  // namespace collatz
