#pragma once

// Möbius function of the poset of finite-index subgroups of Z^2.
//
// moebius(upper, lower) is mu on the interval [lower, upper] (lower a subgroup
// of upper), fixed by mu(L, L) = 1 and, for lower < upper,
//
//     sum over lower <= M <= upper of mu(M, lower) = 0.
//
// With this convention O(L) = (1/[L]) sum_{L' >= L} mu(L', L) F(L') inverts
// F(L) = sum_{L' >= L} [L'] O(L').

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orbitgrowth/lattice.hpp"

namespace orbitgrowth {

struct IntervalKey {
  Sublattice lower;
  Sublattice upper;

  IntervalKey(const Sublattice& lo, const Sublattice& up);

  friend bool operator==(const IntervalKey&, const IntervalKey&) = default;
};

struct IntervalKeyHash {
  std::size_t operator()(const IntervalKey& k) const noexcept {
    SublatticeHash h;
    return h(k.lower) * 31u ^ h(k.upper);
  }
};

/// Concurrent memo tables. Duplicate inserts always carry equal values.
class MoebiusCache {
public:
  std::optional<std::int64_t> find(const IntervalKey& key) const;
  void insert(const IntervalKey& key, std::int64_t value);

  std::optional<std::int64_t> find_type(std::int64_t d1, std::int64_t d2) const;
  void insert_type(std::int64_t d1, std::int64_t d2, std::int64_t value);

  /// Memoized superlattices(L).
  const std::vector<Sublattice>& superlattices_of(const Sublattice& L);

  std::size_t size() const;

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<IntervalKey, std::int64_t, IntervalKeyHash> table_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> by_type_;
  std::unordered_map<Sublattice, std::vector<Sublattice>, SublatticeHash> supers_;
};

/// mu(upper, lower) by the defining recursion, memoized on the raw pair.
/// Throws std::invalid_argument unless contains(upper, lower).
std::int64_t moebius(const Sublattice& upper, const Sublattice& lower, MoebiusCache& cache);

/// Same value, memoized on the isomorphism type Z/d1 x Z/d2 of upper/lower.
/// The value for each type comes from the recursion on the representative
/// interval [L(d1,0,d2), Z^2].
std::int64_t moebius_by_quotient(const Sublattice& upper, const Sublattice& lower,
                                 MoebiusCache& cache);

}  // namespace orbitgrowth
