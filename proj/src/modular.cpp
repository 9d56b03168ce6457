#include "modular.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace orbitgrowth::detail {

u64 powmod(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Montgomery::Montgomery(u64 p) : p_(p) {
  if (p % 2 == 0 || p >= (u64{1} << 62)) throw std::invalid_argument("Montgomery: need odd p < 2^62");
  u64 inv = p;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  ninv_ = ~inv + 1;
  const u64 r = static_cast<u64>((static_cast<u128>(1) << 64) % p);
  r2_ = mulmod(r, r, p);
  one_ = r;
}

namespace {

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

RootedPrime next_rooted_prime(u64 n, u64& k, const std::vector<u64>& factors) {
  for (; k > 0; --k) {
    const u64 p = k * n + 1;
    if (!is_prime_u64(p)) continue;
    for (u64 x = 2;; ++x) {
      const u64 y = powmod(x, (p - 1) / n, p);
      bool primitive = true;
      for (u64 q : factors) {
        if (powmod(y, n / q, p) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        --k;
        return {p, y};
      }
    }
  }
  throw std::runtime_error("rooted_primes: ran out of candidates");
}

struct PrimeStream {
  u64 next_k = 0;
  std::vector<RootedPrime> primes;
};

}  // namespace

std::vector<RootedPrime> rooted_primes(std::int64_t n, std::size_t count) {
  if (n < 1) throw std::invalid_argument("rooted_primes: n must be >= 1");
  static std::mutex mutex;
  static std::map<std::int64_t, PrimeStream> streams;
  std::lock_guard lock(mutex);
  PrimeStream& st = streams[n];
  const u64 un = static_cast<u64>(n);
  if (st.primes.empty()) st.next_k = ((u64{1} << 62) - 2) / un;
  if (st.primes.size() < count) {
    const std::vector<u64> factors = prime_factors(un);
    while (st.primes.size() < count) {
      st.primes.push_back(next_rooted_prime(un, st.next_k, factors));
    }
  }
  return {st.primes.begin(), st.primes.begin() + static_cast<std::ptrdiff_t>(count)};
}

}  // namespace orbitgrowth::detail
