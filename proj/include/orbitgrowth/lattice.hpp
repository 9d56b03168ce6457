#pragma once

// Finite-index sublattices of Z^2 in Hermite normal form, their annihilators
// in the dual torus, and subgroup counts a_n(Z^d).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include <gmpxx.h>

namespace orbitgrowth {

using BigInt = mpz_class;

/// L(a,b,c) = <(a,0),(b,c)> with a,c >= 1 and 0 <= b < a.  Index is a*c.
class Sublattice {
public:
  Sublattice(std::int64_t a, std::int64_t b, std::int64_t c);

  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }
  std::int64_t c() const noexcept { return c_; }
  std::int64_t index() const noexcept { return a_ * c_; }

  static Sublattice full() { return Sublattice(1, 0, 1); }

  friend bool operator==(const Sublattice&, const Sublattice&) = default;
  friend auto operator<=>(const Sublattice&, const Sublattice&) = default;

private:
  std::int64_t a_, b_, c_;
};

std::ostream& operator<<(std::ostream& os, const Sublattice& L);

struct SublatticeHash {
  std::size_t operator()(const Sublattice& L) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(L.a()) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(L.b()) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(L.c()) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// Exact rational in lowest terms with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  /// Representative in [0,1).
  Rational mod1() const;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(const Rational& x, const Rational& y) {
    return static_cast<__int128>(x.num) * y.den <=> static_cast<__int128>(y.num) * x.den;
  }
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// A point (s,t) of the torus R^2/Z^2 with rational coordinates in [0,1).
struct DualPoint {
  Rational s;
  Rational t;

  friend bool operator==(const DualPoint&, const DualPoint&) = default;
  friend auto operator<=>(const DualPoint&, const DualPoint&) = default;
};

/// Sum of two torus points, reduced mod 1.
DualPoint add_mod1(const DualPoint& x, const DualPoint& y);
DualPoint negate_mod1(const DualPoint& x);

/// The finite subgroup of T^2 on which every character of L is trivial.
struct Annihilator {
  std::vector<DualPoint> points;
  Sublattice source;
};

/// All sublattices of index n, lexicographic in (a,b).
std::vector<Sublattice> enumerate_sublattices(std::int64_t n);

/// Length of a shortest nonzero vector of L.
double girth(const Sublattice& L);

/// Exhaustive shortest-vector search over |m|,|k| <= radius; exposed so the
/// default radius can be checked against wider searches.
double girth_with_radius(const Sublattice& L, std::int64_t radius);

Annihilator annihilator(const Sublattice& L);

/// True iff inner is a subgroup of outer.
bool contains(const Sublattice& outer, const Sublattice& inner);

/// Every L' containing L (L and Z^2 included), ordered by index then (a,b,c).
std::vector<Sublattice> superlattices(const Sublattice& L);

/// Invariant factors (d1,d2), d1 | d2, of the finite group outer/inner.
/// Requires contains(outer, inner).
std::pair<std::int64_t, std::int64_t> quotient_invariants(const Sublattice& outer,
                                                          const Sublattice& inner);

/// Number of subgroups of index n in Z^d.
BigInt sublattice_count(int d, std::int64_t n);

/// sublattice_count(d, n) for n = 1..N in one sieve pass; element 0 is unused.
std::vector<BigInt> sublattice_counts(int d, std::int64_t N);

}  // namespace orbitgrowth
