#pragma once

// 62-bit prime fields with Montgomery multiplication, used for the
// multimodular evaluation of group-ring determinants.

#include <cstdint>
#include <vector>

namespace orbitgrowth::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 base, u64 exp, u64 p);
bool is_prime_u64(u64 n);

/// Montgomery arithmetic modulo an odd p < 2^62.
class Montgomery {
public:
  explicit Montgomery(u64 p);

  u64 modulus() const noexcept { return p_; }
  u64 to(u64 x) const noexcept { return mul(x % p_, r2_); }
  u64 from(u64 x) const noexcept { return redc(x); }
  u64 one() const noexcept { return one_; }

  u64 mul(u64 a, u64 b) const noexcept { return redc(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }

private:
  u64 redc(u128 t) const noexcept {
    const u64 m = static_cast<u64>(t) * ninv_;
    const u64 r = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }

  u64 p_, ninv_, r2_, one_;
};

/// A prime p = 1 (mod n) below 2^62 together with a primitive n-th root of
/// unity omega mod p.
struct RootedPrime {
  u64 p;
  u64 omega;
};

/// The first `count` primes p = 1 (mod n), descending from 2^62.  Results
/// are cached per n and safe to request from several threads.
std::vector<RootedPrime> rooted_primes(std::int64_t n, std::size_t count);

}  // namespace orbitgrowth::detail
