#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "orbitgrowth/lattice.hpp"

using namespace orbitgrowth;

namespace {

std::int64_t sigma(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s += d;
  }
  return s;
}

// All HNF triples with ac = n, by scanning a, b, c independently.
std::int64_t brute_hnf_count(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t a = 1; a <= n; ++a) {
    for (std::int64_t c = 1; c <= n; ++c) {
      if (a * c != n) continue;
      for (std::int64_t b = 0; b < a; ++b) ++count;
    }
  }
  return count;
}

// Is (x,y) an integer combination of (a,0) and (b,c)?
bool in_lattice(const Sublattice& L, std::int64_t x, std::int64_t y) {
  if (y % L.c() != 0) return false;
  return (x - (y / L.c()) * L.b()) % L.a() == 0;
}

bool contains_oracle(const Sublattice& outer, const Sublattice& inner) {
  return in_lattice(outer, inner.a(), 0) && in_lattice(outer, inner.b(), inner.c());
}

// Number of upper-triangular d x d Hermite forms of determinant n:
// sum over ordered factorizations n = d_1 ... d_d of prod d_i^{i-1}.
std::int64_t hnf_count_oracle(int d, std::int64_t n, int i = 1) {
  if (i == d) {
    std::int64_t p = 1;
    for (int k = 1; k < i; ++k) p *= n;
    return p;
  }
  std::int64_t total = 0;
  for (std::int64_t m = 1; m <= n; ++m) {
    if (n % m) continue;
    std::int64_t p = 1;
    for (int k = 1; k < i; ++k) p *= m;
    total += p * hnf_count_oracle(d, n / m, i + 1);
  }
  return total;
}

std::vector<Sublattice> all_up_to(std::int64_t N) {
  std::vector<Sublattice> out;
  for (std::int64_t n = 1; n <= N; ++n) {
    for (const Sublattice& L : enumerate_sublattices(n)) out.push_back(L);
  }
  return out;
}

std::set<DualPoint> point_set(const Annihilator& A) { return {A.points.begin(), A.points.end()}; }

}  // namespace

TEST_CASE("Sublattice rejects non-canonical triples") {
  CHECK_THROWS_AS(Sublattice(0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Sublattice(2, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(Sublattice(2, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Sublattice(1, 0, 0), std::invalid_argument);
}

TEST_CASE("enumerate_sublattices examples") {
  CHECK(enumerate_sublattices(1) == std::vector{Sublattice(1, 0, 1)});
  const std::vector<Sublattice> four{Sublattice(1, 0, 4), Sublattice(2, 0, 2), Sublattice(2, 1, 2),
                                     Sublattice(4, 0, 1), Sublattice(4, 1, 1), Sublattice(4, 2, 1),
                                     Sublattice(4, 3, 1)};
  CHECK(enumerate_sublattices(4) == four);
  CHECK(enumerate_sublattices(6).size() == 12);
}

TEST_CASE("sublattice counts equal the divisor sum up to 200") {
  for (std::int64_t n = 1; n <= 200; ++n) {
    const auto lats = enumerate_sublattices(n);
    CHECK(static_cast<std::int64_t>(lats.size()) == sigma(n));
    CHECK(static_cast<std::int64_t>(lats.size()) == brute_hnf_count(n));
    CHECK(sublattice_count(2, n) == sigma(n));
    CHECK(std::is_sorted(lats.begin(), lats.end()));
    CHECK(std::set<Sublattice>(lats.begin(), lats.end()).size() == lats.size());
    if (n >= 2) CHECK(static_cast<double>(lats.size()) <= 9.0 * n * std::log(static_cast<double>(n)));
  }
}

TEST_CASE("sublattice_count matches Hermite-form counts in higher rank") {
  for (std::int64_t n = 1; n <= 30; ++n) CHECK(sublattice_count(1, n) == 1);
  for (int d = 2; d <= 5; ++d) {
    const auto sieve = sublattice_counts(d, 40);
    for (std::int64_t n = 1; n <= 40; ++n) {
      const BigInt want = hnf_count_oracle(d, n);
      CHECK(sublattice_count(d, n) == want);
      CHECK(sieve[static_cast<std::size_t>(n)] == want);
    }
  }
}

TEST_CASE("index") {
  CHECK(Sublattice(1, 0, 1).index() == 1);
  CHECK(Sublattice(2, 1, 3).index() == 6);
  CHECK(Sublattice(5, 4, 1).index() == 5);
}

TEST_CASE("girth examples and radius sufficiency") {
  CHECK(girth(Sublattice(1, 0, 1)) == doctest::Approx(1.0));
  CHECK(girth(Sublattice(3, 0, 3)) == doctest::Approx(3.0));
  CHECK(girth(Sublattice(2, 1, 2)) == doctest::Approx(2.0));
  CHECK(girth_with_radius(Sublattice(2, 1, 2), 4) == doctest::Approx(2.0));
  for (const Sublattice& L : all_up_to(60)) {
    const std::int64_t wide = 4 * std::max(L.a(), L.b() + L.c());
    CHECK(girth(L) == girth_with_radius(L, wide));
  }
}

TEST_CASE("annihilator examples") {
  const auto full = annihilator(Sublattice(1, 0, 1));
  REQUIRE(full.points.size() == 1);
  CHECK(full.points[0] == DualPoint{Rational(0, 1), Rational(0, 1)});

  const std::set<DualPoint> want{{Rational(0, 1), Rational(0, 1)},
                                 {Rational(0, 1), Rational(1, 2)},
                                 {Rational(1, 2), Rational(0, 1)},
                                 {Rational(1, 2), Rational(1, 2)}};
  CHECK(point_set(annihilator(Sublattice(2, 0, 2))) == want);

  std::set<DualPoint> want6;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 3; ++k) want6.insert({Rational(j, 2), (Rational(k, 3) + -Rational(j, 6)).mod1()});
  }
  const auto A = annihilator(Sublattice(2, 1, 3));
  CHECK(A.points.size() == 6);
  CHECK(point_set(A) == want6);
}

TEST_CASE("annihilators are the character-trivial subgroups") {
  for (const Sublattice& L : all_up_to(60)) {
    const Annihilator A = annihilator(L);
    const std::set<DualPoint> pts = point_set(A);
    CHECK(A.source == L);
    CHECK(A.points.size() == static_cast<std::size_t>(L.index()));
    CHECK(pts.size() == A.points.size());
    for (const DualPoint& p : A.points) {
      CHECK(p.s.den > 0);
      CHECK(L.index() % p.s.den == 0);
      CHECK(L.index() % p.t.den == 0);
      // <(a,0),(s,t)> and <(b,c),(s,t)> are integers.
      CHECK((Rational(L.a() * p.s.num, p.s.den)).den == 1);
      CHECK((Rational(L.b() * p.s.num, p.s.den) + Rational(L.c() * p.t.num, p.t.den)).den == 1);
      CHECK(pts.count(negate_mod1(p)) == 1);
    }
    if (L.index() <= 24) {
      for (const DualPoint& p : A.points) {
        for (const DualPoint& q : A.points) CHECK(pts.count(add_mod1(p, q)) == 1);
      }
    }
  }
}

TEST_CASE("contains examples") {
  CHECK(contains(Sublattice(1, 0, 1), Sublattice(3, 2, 4)));
  CHECK(contains(Sublattice(2, 0, 1), Sublattice(2, 0, 2)));
  CHECK_FALSE(contains(Sublattice(2, 0, 1), Sublattice(3, 0, 1)));
}

TEST_CASE("contains agrees with membership of generators") {
  const auto lats = all_up_to(24);
  for (const Sublattice& outer : lats) {
    for (const Sublattice& inner : lats) {
      const bool c = contains(outer, inner);
      CHECK(c == contains_oracle(outer, inner));
      if (c) CHECK(inner.index() % outer.index() == 0);
    }
  }
}

TEST_CASE("superlattices examples") {
  CHECK(superlattices(Sublattice(1, 0, 1)) == std::vector{Sublattice(1, 0, 1)});
  const auto s = superlattices(Sublattice(2, 0, 2));
  const std::set<Sublattice> want{Sublattice(1, 0, 1), Sublattice(1, 0, 2), Sublattice(2, 0, 1),
                                  Sublattice(2, 1, 1), Sublattice(2, 0, 2)};
  CHECK(std::set<Sublattice>(s.begin(), s.end()) == want);
  CHECK(s.size() == want.size());
  for (std::int64_t p : {2, 3, 5, 7, 11, 101}) {
    CHECK(superlattices(Sublattice(p, 0, 1)) == std::vector{Sublattice(1, 0, 1), Sublattice(p, 0, 1)});
  }
}

TEST_CASE("superlattices are exactly the containing lattices and upward closed") {
  const auto lats = all_up_to(36);
  for (const Sublattice& L : lats) {
    const auto up = superlattices(L);
    const std::set<Sublattice> S(up.begin(), up.end());
    CHECK(S.count(L) == 1);
    CHECK(S.count(Sublattice::full()) == 1);
    std::set<Sublattice> want;
    for (const Sublattice& M : lats) {
      if (L.index() % M.index() == 0 && contains_oracle(M, L)) want.insert(M);
    }
    CHECK(S == want);
    for (const Sublattice& M : up) {
      for (const Sublattice& M2 : superlattices(M)) CHECK(S.count(M2) == 1);
    }
  }
}

TEST_CASE("quotient invariants follow the Smith form of the change of basis") {
  const auto lats = all_up_to(36);
  for (const Sublattice& outer : lats) {
    for (const Sublattice& inner : lats) {
      if (!contains_oracle(outer, inner)) continue;
      // Coordinates of inner's generators in outer's basis.
      const std::int64_t k1 = 0, k2 = inner.c() / outer.c();
      const std::int64_t m1 = inner.a() / outer.a();
      const std::int64_t m2 = (inner.b() - k2 * outer.b()) / outer.a();
      const std::int64_t det = std::abs(m1 * k2 - m2 * k1);
      const std::int64_t d1 = std::gcd(std::gcd(m1, k1), std::gcd(m2, k2));
      const auto [e1, e2] = quotient_invariants(outer, inner);
      CHECK(e1 == d1);
      CHECK(e2 == det / d1);
      CHECK(e2 % e1 == 0);
      CHECK(e1 * e2 == inner.index() / outer.index());
    }
  }
}

TEST_CASE("Rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(-1, 3).mod1() == Rational(2, 3));
  CHECK(Rational(7, 3).mod1() == Rational(1, 3));
  CHECK(Rational(1, 6) + Rational(1, 3) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational(1, 0));
}
