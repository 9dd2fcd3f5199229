#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "collatz/rational.hpp"

namespace collatz {

/// Accelerated Collatz map: n/2 for even n, (3n+1)/2 for odd n.
inline Integer collatz_step(const Integer& n) {
  if ((n & 1) == 0) return n >> 1;
  return (3 * n + 1) >> 1;
}

/// Classical map: n/2 for even n, 3n+1 for odd n.
inline Integer classic_step(const Integer& n) {
  if ((n & 1) == 0) return n >> 1;
  return 3 * n + 1;
}

inline Integer collatz_iterate(Integer n, std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) n = collatz_step(n);
  return n;
}

struct OrbitReport {
  Integer start;
  std::vector<Integer> orbit;  // orbit[0] == start
  /// First index with orbit value < 3 (the value is recorded, iteration stops).
  std::optional<std::size_t> quotient_death_time;
  /// First index whose orbit value is a power of two.
  std::optional<std::size_t> hit_power_of_two;
  bool stopped_on_repeat = false;
  bool budget_exhausted = false;
};

/// Iterate the accelerated map from k >= 3 until the value drops below 3,
/// a value repeats, or max_steps is exhausted.
OrbitReport orbit(const Integer& k, std::size_t max_steps = 10000);

/// Sorted preimages j >= 3 of k >= 3 under the accelerated map:
/// always 2k, and (2k-1)/3 when k = 2 mod 3 and that quotient is >= 3.
std::vector<Integer> preimages(const Integer& k);

/// Sorted n-th preimage set {j >= 3 : T^n(j) = k with every intermediate >= 3}.
/// Throws BudgetError when the enumeration exceeds max_nodes.
std::vector<Integer> preimage_tree(const Integer& k, unsigned n,
                                   std::size_t max_nodes = 1000000);

enum class LemmaMode : std::uint8_t { density, adjoint };

/// The division-chain data attached to a starting degree k that is not a power
/// of two.  Writing k = (2 m_1 + 1) 2^{p_1} and then repeatedly factoring
/// 3 m_n + 2 = (2 m_{n+1} + 1) 2^{q_{n+1}} yields
///   p_{n+1} = q_{n+1} + p_n + 1,   j_{n+1} = p_{n+1} - p_n + j_n,
/// with j_1 = p_1 + 1.  The recursion becomes stationary exactly when some
/// 3 m_n + 2 is a power of two.  Entries are stored up to and including the
/// stationary index; all later entries would repeat it.
struct LemmaSequences {
  Integer k;
  LemmaMode mode = LemmaMode::density;
  std::vector<Integer> m_seq;
  std::vector<std::uint64_t> p_seq;
  std::vector<std::uint64_t> j_seq;
  /// Index at which the recursion became stationary, if it did within budget.
  std::optional<std::size_t> stationary_at;
  bool budget_exhausted = false;

  std::size_t size() const { return m_seq.size(); }

  /// Mode-dependent strictly increasing product:
  /// density tracks (6 m_n + 4) 2^{p_n}, adjoint tracks (3 m_n + 2) 2^{p_n}.
  Integer tracked_product(std::size_t i) const;
};

/// Build the sequences for k >= 3 that is not a power of two.
LemmaSequences lemma_sequences(const Integer& k, LemmaMode mode = LemmaMode::density,
                               std::size_t max_steps = 10000);

}  // namespace collatz
