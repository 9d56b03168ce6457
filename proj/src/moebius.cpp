#include "orbitgrowth/moebius.hpp"

#include <mutex>
#include <stdexcept>

namespace orbitgrowth {

IntervalKey::IntervalKey(const Sublattice& lo, const Sublattice& up) : lower(lo), upper(up) {
  if (!contains(upper, lower)) {
    throw std::invalid_argument("IntervalKey: upper does not contain lower");
  }
}

std::optional<std::int64_t> MoebiusCache::find(const IntervalKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find(key);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void MoebiusCache::insert(const IntervalKey& key, std::int64_t value) {
  std::unique_lock lock(mutex_);
  table_.insert_or_assign(key, value);
}

std::optional<std::int64_t> MoebiusCache::find_type(std::int64_t d1, std::int64_t d2) const {
  std::shared_lock lock(mutex_);
  auto it = by_type_.find({d1, d2});
  if (it == by_type_.end()) return std::nullopt;
  return it->second;
}

void MoebiusCache::insert_type(std::int64_t d1, std::int64_t d2, std::int64_t value) {
  std::unique_lock lock(mutex_);
  by_type_.insert_or_assign({d1, d2}, value);
}

const std::vector<Sublattice>& MoebiusCache::superlattices_of(const Sublattice& L) {
  {
    std::shared_lock lock(mutex_);
    auto it = supers_.find(L);
    if (it != supers_.end()) return it->second;
  }
  std::vector<Sublattice> list = superlattices(L);
  std::unique_lock lock(mutex_);
  // References into an unordered_map stay valid across rehashing.
  return supers_.try_emplace(L, std::move(list)).first->second;
}

std::size_t MoebiusCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

std::int64_t moebius(const Sublattice& upper, const Sublattice& lower, MoebiusCache& cache) {
  const IntervalKey key(lower, upper);
  if (upper == lower) return 1;
  if (auto hit = cache.find(key)) return *hit;

  std::int64_t sum = 0;
  for (const Sublattice& M : cache.superlattices_of(lower)) {
    if (M == upper || !contains(upper, M)) continue;
    sum += moebius(M, lower, cache);
  }
  cache.insert(key, -sum);
  return -sum;
}

std::int64_t moebius_by_quotient(const Sublattice& upper, const Sublattice& lower,
                                 MoebiusCache& cache) {
  const auto [d1, d2] = quotient_invariants(upper, lower);
  if (auto hit = cache.find_type(d1, d2)) return *hit;
  const std::int64_t mu = moebius(Sublattice::full(), Sublattice(d1, 0, d2), cache);
  cache.insert_type(d1, d2, mu);
  return mu;
}

}  // namespace orbitgrowth
