#pragma once

// Periodic-point counts F(L), orbit counts O(L), the orbit-counting function
// pi(N) and the weighted orbit sum M(N) = sum_{[L] <= N} O(L) e^{-g [L]}.

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orbitgrowth/laurent.hpp"
#include "orbitgrowth/lattice.hpp"
#include "orbitgrowth/measures.hpp"
#include "orbitgrowth/moebius.hpp"

namespace orbitgrowth {

inline constexpr std::int64_t kDefaultExactThreshold = 64;

/// Raised when an orbit count fails to be a non-negative integer.
class IntegrityError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// |det| of multiplication by f on Z[Z^2/L], by fraction-free elimination.
BigInt periodic_points_determinant(const LaurentPoly& f, const Sublattice& L);

/// The same determinant as the product of f over the characters of Z^2/L,
/// reduced modulo primes p = 1 (mod [L]) and recombined by CRT.
BigInt periodic_points_modular(const LaurentPoly& f, const Sublattice& L);

/// exp([L] m_finite) in extended precision, rounded.  Empty when the value
/// is too large to round reliably or the residual exceeds 0.25.
std::optional<BigInt> periodic_points_float(const LaurentPoly& f, const Sublattice& L);

/// log F(L) = [L] m_finite(f, L).
double log_periodic_points(const LaurentPoly& f, const Sublattice& L);

/// F(L): the determinant path up to exact_threshold, the modular path above.
BigInt periodic_points(const LaurentPoly& f, const Sublattice& L,
                       std::int64_t exact_threshold = kDefaultExactThreshold);

/// Memo tables for F and the Möbius function, shared across sweeps over
/// one polynomial.  Safe for concurrent readers and writers.
class CountCache {
public:
  explicit CountCache(LaurentPoly f, std::int64_t exact_threshold = kDefaultExactThreshold);

  const LaurentPoly& poly() const noexcept { return f_; }
  std::int64_t exact_threshold() const noexcept { return exact_threshold_; }
  MoebiusCache& moebius_cache() noexcept { return mu_; }

  BigInt periodic_points(const Sublattice& L);
  std::size_t size() const;

private:
  LaurentPoly f_;
  std::int64_t exact_threshold_;
  MoebiusCache mu_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<Sublattice, BigInt, SublatticeHash> F_;
};

/// O(L) = (1/[L]) sum_{L' >= L} mu(L', L) F(L').  Throws IntegrityError if
/// the sum is negative or not divisible by [L].
BigInt orbit_count(CountCache& cache, const Sublattice& L);

/// pi(N) = sum of O(L) over [L] <= N.
BigInt pi_count(CountCache& cache, std::int64_t N);

struct CountRow {
  std::int64_t n = 0;
  std::int64_t a_n = 0;
  BigInt sum_F;
  BigInt pi;
  double mertens = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double n1 = 0.0, n2 = 0.0, n3 = 0.0, n4 = 0.0;
};

struct CountSeries {
  double g = 0.0;
  double tie_tolerance = kTieTolerance;
  std::vector<std::int64_t> A;
  std::vector<std::pair<std::int64_t, std::int64_t>> B;
  std::vector<CountRow> rows;
};

/// Which of the four classes (a in A?, (b,c) in B?) L falls in, as 1..4.
int witness_class(const Sublattice& L, const std::vector<std::int64_t>& A,
                  const std::vector<std::pair<std::int64_t, std::int64_t>>& B);

/// Fills rows n = 1..N.  M1 is the main term sum_{m<=n} (1/m) sum_{L in L(m)}
/// F(L) e^{-g m}, M2 = M - M1, and N1..N4 split M1 by witness_class.
CountSeries mertens(CountCache& cache, std::int64_t N, double g,
                    const std::vector<std::int64_t>& A = {},
                    const std::vector<std::pair<std::int64_t, std::int64_t>>& B = {},
                    double tie_tolerance = kTieTolerance);

// ---------------------------------------------------------------------------
// Full Z^d-shift constants: M(N) ~ C(d) N^{d-1} with
// C(d) = (1/(d-1)) zeta(2) zeta(3) ... zeta(d).

struct FullShiftConstant {
  int d = 0;
  double value = 0.0;
  /// C(d) = (rational_num / rational_den) * pi^pi_power * prod zeta(odd_zetas).
  BigInt rational_num;
  BigInt rational_den;
  int pi_power = 0;
  std::vector<int> odd_zetas;

  std::string closed_form() const;
};

/// zeta(s) for integer s >= 2.
long double zeta_int(int s);

FullShiftConstant fullshift_constant(int d);

/// sum_{n<=N} a_n(Z^d)/n.
double fullshift_mertens_partial(int d, std::int64_t N);

}  // namespace orbitgrowth
