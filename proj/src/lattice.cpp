#include "orbitgrowth/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace orbitgrowth {

namespace {

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

Sublattice::Sublattice(std::int64_t a, std::int64_t b, std::int64_t c) : a_(a), b_(b), c_(c) {
  if (a < 1 || c < 1 || b < 0 || b >= a) {
    throw std::invalid_argument("Sublattice: need a,c >= 1 and 0 <= b < a, got (" +
                                std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
  }
}

std::ostream& operator<<(std::ostream& os, const Sublattice& L) {
  return os << "L(" << L.a() << "," << L.b() << "," << L.c() << ")";
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

Rational Rational::mod1() const { return Rational(floor_mod(num, den), den); }

Rational operator+(const Rational& x, const Rational& y) {
  const std::int64_t g = std::gcd(x.den, y.den);
  const std::int64_t yd = y.den / g;
  return Rational(x.num * yd + y.num * (x.den / g), x.den * yd);
}

Rational operator-(const Rational& x) { return Rational(-x.num, x.den); }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  if (r.den == 1) return os << r.num;
  return os << r.num << "/" << r.den;
}

DualPoint add_mod1(const DualPoint& x, const DualPoint& y) {
  return {(x.s + y.s).mod1(), (x.t + y.t).mod1()};
}

DualPoint negate_mod1(const DualPoint& x) { return {(-x.s).mod1(), (-x.t).mod1()}; }

std::vector<Sublattice> enumerate_sublattices(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("enumerate_sublattices: n must be >= 1");
  std::vector<Sublattice> out;
  for (std::int64_t a : divisors(n)) {
    for (std::int64_t b = 0; b < a; ++b) out.emplace_back(a, b, n / a);
  }
  return out;
}

double girth_with_radius(const Sublattice& L, std::int64_t radius) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t m = -radius; m <= radius; ++m) {
    for (std::int64_t k = -radius; k <= radius; ++k) {
      if (m == 0 && k == 0) continue;
      const std::int64_t x = m * L.a() + k * L.b();
      const std::int64_t y = k * L.c();
      best = std::min(best, x * x + y * y);
    }
  }
  return std::sqrt(static_cast<double>(best));
}

double girth(const Sublattice& L) {
  return girth_with_radius(L, 2 * std::max(L.a(), L.b() + L.c()));
}

Annihilator annihilator(const Sublattice& L) {
  const std::int64_t a = L.a(), b = L.b(), c = L.c(), n = L.index();
  Annihilator ann{{}, L};
  ann.points.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < a; ++j) {
    for (std::int64_t k = 0; k < c; ++k) {
      ann.points.push_back({Rational(j, a), Rational(floor_mod(a * k - j * b, n), n)});
    }
  }
  return ann;
}

bool contains(const Sublattice& outer, const Sublattice& inner) {
  if (inner.a() % outer.a() != 0 || inner.c() % outer.c() != 0) return false;
  const std::int64_t y = inner.c() / outer.c();
  return (inner.b() - y * outer.b()) % outer.a() == 0;
}

std::vector<Sublattice> superlattices(const Sublattice& L) {
  std::vector<Sublattice> out;
  for (std::int64_t m : divisors(L.index())) {
    for (const Sublattice& cand : enumerate_sublattices(m)) {
      if (contains(cand, L)) out.push_back(cand);
    }
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> quotient_invariants(const Sublattice& outer,
                                                          const Sublattice& inner) {
  if (!contains(outer, inner)) {
    throw std::invalid_argument("quotient_invariants: outer does not contain inner");
  }
  // Rows of inner's basis in outer's basis: [[x1, 0], [x2, y]].
  const std::int64_t x1 = inner.a() / outer.a();
  const std::int64_t y = inner.c() / outer.c();
  const std::int64_t x2 = (inner.b() - y * outer.b()) / outer.a();
  const std::int64_t d1 = std::gcd(std::gcd(x1, std::abs(x2)), y);
  return {d1, x1 * y / d1};
}

BigInt sublattice_count(int d, std::int64_t n) {
  if (d < 1 || n < 1) throw std::invalid_argument("sublattice_count: need d >= 1, n >= 1");
  const std::vector<std::int64_t> divs = divisors(n);
  // counts[k] maps each divisor of n to a_{divisor}(Z^k).
  std::map<std::int64_t, BigInt> prev;
  for (std::int64_t m : divs) prev[m] = 1;
  for (int k = 2; k <= d; ++k) {
    std::map<std::int64_t, BigInt> cur;
    for (std::int64_t m : divs) {
      BigInt total = 0;
      for (std::int64_t e : divs) {
        if (e > m) break;
        if (m % e != 0) continue;
        BigInt w;
        mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k - 1));
        total += w * prev[m / e];
      }
      cur[m] = total;
    }
    prev = std::move(cur);
  }
  return prev[n];
}

std::vector<BigInt> sublattice_counts(int d, std::int64_t N) {
  if (d < 1 || N < 1) throw std::invalid_argument("sublattice_counts: need d >= 1, N >= 1");
  std::vector<BigInt> prev(static_cast<std::size_t>(N + 1), 1);
  prev[0] = 0;
  for (int k = 2; k <= d; ++k) {
    std::vector<BigInt> cur(static_cast<std::size_t>(N + 1), 0);
    BigInt w;
    for (std::int64_t m = 1; m <= N; ++m) {
      mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k - 1));
      for (std::int64_t q = 1; m * q <= N; ++q) cur[static_cast<std::size_t>(m * q)] += w * prev[static_cast<std::size_t>(q)];
    }
    prev = std::move(cur);
  }
  return prev;
}

}  // namespace orbitgrowth
