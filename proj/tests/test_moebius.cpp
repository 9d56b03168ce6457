#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>
#include <random>

#include "orbitgrowth/moebius.hpp"

using namespace orbitgrowth;

namespace {

std::vector<Sublattice> all_up_to(std::int64_t N) {
  std::vector<Sublattice> out;
  for (std::int64_t n = 1; n <= N; ++n) {
    for (const Sublattice& L : enumerate_sublattices(n)) out.push_back(L);
  }
  return out;
}

// mu on the subgroup lattice of Z/d1 x Z/d2 from 0 to the whole group: the
// product over primes of (-1)^k p^{k(k-1)/2} when the p-part is elementary
// abelian of rank k, and 0 otherwise.
std::int64_t mu_oracle(std::int64_t d1, std::int64_t d2) {
  std::int64_t result = 1;
  std::int64_t n = d2;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    int e2 = 0, e1 = 0;
    while (n % p == 0) {
      n /= p;
      ++e2;
    }
    for (std::int64_t m = d1; m % p == 0; m /= p) ++e1;
    if (e2 > 1) return 0;
    const int k = e1 + e2;
    std::int64_t pk = 1;
    for (int i = 0; i < k * (k - 1) / 2; ++i) pk *= p;
    result *= (k % 2 ? -1 : 1) * pk;
  }
  return result;
}

// Intermediate lattices M with lower <= M <= upper.
std::vector<Sublattice> interval(const Sublattice& upper, const Sublattice& lower) {
  std::vector<Sublattice> out;
  for (const Sublattice& M : superlattices(lower)) {
    if (contains(upper, M)) out.push_back(M);
  }
  return out;
}

}  // namespace

TEST_CASE("moebius examples") {
  MoebiusCache cache;
  for (const Sublattice& L : all_up_to(12)) CHECK(moebius(L, L, cache) == 1);
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    CHECK(moebius(Sublattice::full(), Sublattice(p, 0, 1), cache) == -1);
    CHECK(moebius(Sublattice::full(), Sublattice(1, 0, p), cache) == -1);
    CHECK(moebius(Sublattice::full(), Sublattice(p, 1, 1), cache) == -1);
    CHECK(moebius(Sublattice::full(), Sublattice(p, 0, p), cache) == p);
    CHECK(moebius(Sublattice::full(), Sublattice(p * p, 0, 1), cache) == 0);
  }
  CHECK(moebius(Sublattice::full(), Sublattice(2, 0, 2), cache) == 2);
  CHECK(moebius(Sublattice::full(), Sublattice(3, 0, 3), cache) == 3);
}

TEST_CASE("moebius rejects pairs that are not nested") {
  MoebiusCache cache;
  CHECK_THROWS_AS(moebius(Sublattice(2, 0, 1), Sublattice(3, 0, 1), cache), std::invalid_argument);
  CHECK_THROWS_AS(moebius_by_quotient(Sublattice(2, 0, 1), Sublattice(3, 0, 1), cache), std::invalid_argument);
  CHECK_THROWS_AS(IntervalKey(Sublattice(3, 0, 1), Sublattice(2, 0, 1)), std::invalid_argument);
}

TEST_CASE("moebius matches the abelian p-group closed form") {
  MoebiusCache raw, typed;
  const auto lats = all_up_to(36);
  for (const Sublattice& lower : lats) {
    for (const Sublattice& upper : superlattices(lower)) {
      const auto [d1, d2] = quotient_invariants(upper, lower);
      const std::int64_t want = mu_oracle(d1, d2);
      CHECK(moebius(upper, lower, raw) == want);
      CHECK(moebius_by_quotient(upper, lower, typed) == want);
    }
  }
}

TEST_CASE("defining recursion sums to zero on every proper interval") {
  MoebiusCache cache;
  for (const Sublattice& lower : all_up_to(24)) {
    for (const Sublattice& upper : superlattices(lower)) {
      if (upper == lower) continue;
      std::int64_t sum = 0;
      for (const Sublattice& M : interval(upper, lower)) sum += moebius(M, lower, cache);
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("cache transparency") {
  MoebiusCache warm;
  const auto lats = all_up_to(24);
  for (const Sublattice& L : lats) {
    for (const Sublattice& U : superlattices(L)) moebius(U, L, warm);
  }
  const std::size_t filled = warm.size();
  CHECK(filled > 0);
  for (const Sublattice& L : lats) {
    for (const Sublattice& U : superlattices(L)) {
      MoebiusCache cold;
      CHECK(moebius(U, L, cold) == moebius(U, L, warm));
      CHECK(moebius_by_quotient(U, L, cold) == moebius(U, L, warm));
    }
  }
  CHECK(warm.size() == filled);
}

TEST_CASE("round-trip inversion with random integer functions") {
  // Lattices of index <= 24 form an upward-closed set, so one random F on
  // the set exercises every interval [L0, Z^2] at once.
  MoebiusCache cache;
  const auto lats = all_up_to(24);
  std::map<Sublattice, std::size_t> pos;
  for (std::size_t i = 0; i < lats.size(); ++i) pos[lats[i]] = i;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> up(lats.size());
  for (std::size_t i = 0; i < lats.size(); ++i) {
    for (const Sublattice& Lp : superlattices(lats[i])) up[i].emplace_back(pos.at(Lp), moebius(Lp, lats[i], cache));
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<BigInt> F(lats.size());
    for (BigInt& x : F) x = static_cast<long>(rng() % 10001) - 5000;
    std::vector<mpq_class> O(lats.size());
    for (std::size_t i = 0; i < lats.size(); ++i) {
      mpq_class s = 0;
      for (const auto& [j, m] : up[i]) s += mpq_class(static_cast<long>(m)) * F[j];
      O[i] = s / static_cast<long>(lats[i].index());
    }
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < lats.size(); ++i) {
      mpq_class g = 0;
      for (const auto& [j, m] : up[i]) g += static_cast<long>(lats[j].index()) * O[j];
      mismatches += g == F[i] ? 0 : 1;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("largest |mu| over indices up to 200") {
  MoebiusCache cache;
  std::int64_t worst = 0;
  std::pair<std::int64_t, std::int64_t> at{1, 1};
  for (std::int64_t d1 = 1; d1 * d1 <= 200; ++d1) {
    for (std::int64_t d2 = d1; d1 * d2 <= 200; d2 += d1) {
      const std::int64_t m = std::abs(moebius(Sublattice::full(), Sublattice(d1, 0, d2), cache));
      CHECK(m == std::abs(mu_oracle(d1, d2)));
      if (m > worst) {
        worst = m;
        at = {d1, d2};
      }
    }
  }
  MESSAGE("max |mu| over indices <= 200 is " << worst << " for quotient Z/" << at.first << " x Z/" << at.second);
  CHECK(worst == 14);
}
