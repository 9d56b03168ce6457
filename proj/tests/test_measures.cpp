#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "orbitgrowth/counting.hpp"
#include "orbitgrowth/measures.hpp"

using namespace orbitgrowth;

namespace {

const char* const kExamples[] = {"3+x+y", "2+x*y^2", "x-2", "5"};

double log_big(const BigInt& x) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace

TEST_CASE("LineSubgroup normalization") {
  CHECK(LineSubgroup(-1, -2) == LineSubgroup(1, 2));
  CHECK(LineSubgroup(-3, 0) == LineSubgroup(3, 0));
  CHECK(LineSubgroup(-3, 2).p() == -3);
  CHECK(LineSubgroup(4, -2).q() == 2);
  CHECK(LineSubgroup(4, -2).p() == -4);
  CHECK_THROWS_AS(LineSubgroup(0, 0), std::invalid_argument);
}

TEST_CASE("approximating line") {
  CHECK(approximating_line(Sublattice(2, 1, 5)) == LineSubgroup(2, 0));
  CHECK(approximating_line(Sublattice(5, 3, 2)) == LineSubgroup(3, 2));
  CHECK(approximating_line(Sublattice(3, 0, 3)) == LineSubgroup(0, 3));
}

TEST_CASE("m_finite examples") {
  for (const Sublattice& L : {Sublattice(1, 0, 1), Sublattice(3, 1, 4), Sublattice(7, 0, 1)}) {
    CHECK(m_finite(parse_poly("5"), L) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  }
  CHECK(m_finite(parse_poly("3+x+y"), Sublattice(1, 0, 1)) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(m_finite(parse_poly("x-2"), Sublattice(3, 0, 1)) == doctest::Approx(std::log(7.0) / 3).epsilon(1e-14));
}

TEST_CASE("m_finite is log F / [L] for exact determinants") {
  for (const char* text : kExamples) {
    const LaurentPoly f = parse_poly(text);
    for (std::int64_t n = 1; n <= 30; ++n) {
      for (const Sublattice& L : enumerate_sublattices(n)) {
        const double want = log_big(periodic_points_determinant(f, L)) / static_cast<double>(n);
        CHECK(std::abs(m_finite(f, L) - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("m_line examples") {
  const LaurentPoly f = parse_poly("2+x*y^2");
  for (std::int64_t a = 1; a <= 8; ++a) {
    CHECK(std::abs(m_line(f, LineSubgroup(a, 0), 512) - std::log(2.0)) < 1e-12);
  }
  CHECK(std::abs(m_line(f, LineSubgroup(1, 2), 512) - std::log(3.0)) < 1e-12);
  // Ann<k(1,2)> has k components on which x y^2 is a k-th root of unity.
  for (std::int64_t k = 2; k <= 6; ++k) {
    const double want = std::log(std::pow(2.0, k) - std::pow(-1.0, k)) / static_cast<double>(k);
    CHECK(std::abs(m_line(f, LineSubgroup(k, 2 * k), 512) - want) < 1e-12);
  }
  CHECK(std::abs(m_line(parse_poly("3+x+y"), LineSubgroup(0, 1), 512) - std::log(4.0)) < 1e-12);
  CHECK(std::abs(m_line(parse_poly("3+x+y"), LineSubgroup(1, 0), 512) - std::log(4.0)) < 1e-12);
  const LaurentPoly g = parse_poly("x-2");
  for (std::int64_t c = 1; c <= 9; ++c) {
    for (std::int64_t b = 0; b < 5; ++b) CHECK(std::abs(m_line(g, LineSubgroup(b, c), 512) - std::log(2.0)) < 1e-12);
  }
  CHECK_THROWS_AS(m_line(g, LineSubgroup(1, 1), 8), std::invalid_argument);
}

TEST_CASE("entropy examples") {
  CHECK(std::abs(entropy(parse_poly("5"), 64) - std::log(5.0)) < 1e-14);
  CHECK(std::abs(entropy(parse_poly("3+x+y")) - std::log(3.0)) < 1e-9);
  CHECK(std::abs(entropy(parse_poly("2+x*y^2")) - std::log(2.0)) < 1e-9);
  CHECK(std::abs(entropy(parse_poly("x-2")) - std::log(2.0)) < 1e-9);
  CHECK_THROWS_AS(entropy(parse_poly("x-2"), 8), std::invalid_argument);
}

TEST_CASE("entropy is stable under node doubling") {
  for (const char* text : kExamples) {
    const LaurentPoly f = parse_poly(text);
    CHECK(std::abs(entropy(f, 512) - entropy(f, 1024)) < 1e-10);
  }
}

TEST_CASE("line quadrature is self-consistent under node doubling") {
  for (const char* text : kExamples) {
    const LaurentPoly f = parse_poly(text);
    for (std::int64_t q = 0; q <= 12; ++q) {
      for (std::int64_t p = -12; p <= 12; ++p) {
        if (q == 0 && p <= 0) continue;
        const LineSubgroup K(p, q);
        CHECK(std::abs(m_line(f, K, 256) - m_line(f, K, 512)) < 1e-10);
      }
    }
  }
}

TEST_CASE("line measures approach h across shells") {
  for (const char* text : kExamples) {
    const LaurentPoly f = parse_poly(text);
    const double h = entropy(f);
    double previous = INFINITY;
    for (std::int64_t shell : {8, 16, 32, 64}) {
      double worst = 0.0;
      for (std::int64_t q = 0; q <= shell; ++q) {
        for (std::int64_t p = -shell; p <= shell; ++p) {
          if (std::max(std::abs(p), q) != shell || std::gcd(p, q) != 1) continue;
          if (q == 0 && p <= 0) continue;
          worst = std::max(worst, std::abs(m_line(f, LineSubgroup(p, q), 512) - h));
        }
      }
      // 1e-11 absorbs quadrature noise once both shells sit at the floor.
      CHECK(worst <= previous + 1e-11);
      previous = worst;
    }
  }
}

TEST_CASE("finite measures approach J(a) when c is large") {
  for (const char* text : kExamples) {
    const LaurentPoly f = parse_poly(text);
    const double alpha = variation_bound(f, check_expansive(f).min_modulus_lower_bound);
    for (std::int64_t a = 1; a <= 6; ++a) {
      for (std::int64_t c : {8, 16, 32, 64}) {
        for (std::int64_t b = 0; b < a; ++b) {
          const Sublattice L(a, b, c);
          const double d = std::abs(m_finite(f, L) - m_line(f, LineSubgroup(a, 0), 512));
          CHECK(d <= alpha / static_cast<double>(c) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("approximation bound holds whenever a < c") {
  for (const char* text : kExamples) {
    const LaurentPoly f = parse_poly(text);
    const double alpha = variation_bound(f, check_expansive(f).min_modulus_lower_bound);
    std::size_t violations = 0;
    for (std::int64_t n = 1; n <= 200; ++n) {
      for (const Sublattice& L : enumerate_sublattices(n)) {
        if (L.a() >= L.c()) continue;
        const double d = std::abs(m_finite(f, L) - m_line(f, approximating_line(L), 512));
        if (d > alpha / static_cast<double>(L.c()) + 1e-12) ++violations;
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("lattices containing (1,2) keep m_finite at log 3 for 2+x*y^2") {
  // For odd a, L(a,(a+1)/2,1) contains (1,2), so x y^2 is trivial on its
  // annihilator and F = 3^a exactly, while K(L) = J((a+1)/2, 1) has measure
  // log 2.  The gap does not shrink like 1/max(a,c).
  const LaurentPoly f = parse_poly("2+x*y^2");
  const double alpha = variation_bound(f, check_expansive(f).min_modulus_lower_bound);
  for (std::int64_t a = 3; a <= 399; a += 2) {
    const Sublattice L(a, (a + 1) / 2, 1);
    CHECK(m_finite(f, L) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(std::abs(m_line(f, approximating_line(L), 512) - std::log(2.0)) < 1e-9);
    if (a > 113) CHECK(std::abs(m_finite(f, L) - m_line(f, approximating_line(L), 512)) > alpha / static_cast<double>(a));
  }
}

TEST_CASE("growth_rate examples at reduced search effort") {
  const GrowthReport a = growth_rate(parse_poly("2+x*y^2"), 8, 256);
  CHECK(std::abs(a.g - std::log(3.0)) < 1e-8);
  CHECK(a.dichotomy == Dichotomy::excess);
  CHECK(a.A_witnesses.empty());
  CHECK(a.B_witnesses == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 2}});
  CHECK(a.best_line == std::pair<std::int64_t, std::int64_t>{1, 2});
  CHECK(a.lambda > 0.0);
  CHECK(a.certified);

  const GrowthReport b = growth_rate(parse_poly("3+x+y"), 8, 256);
  CHECK(std::abs(b.g - std::log(4.0)) < 1e-8);
  CHECK(b.dichotomy == Dichotomy::excess);
  CHECK(b.A_witnesses == std::vector<std::int64_t>{1});
  CHECK(b.B_witnesses == std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 1}});
  CHECK(b.lambda > 0.0);

  for (const char* text : {"x-2", "5"}) {
    const GrowthReport c = growth_rate(parse_poly(text), 8, 256);
    CHECK(c.dichotomy == Dichotomy::balanced);
    CHECK(std::abs(c.g - c.h) < 1e-8);
    CHECK(c.A_witnesses.empty());
    CHECK(c.B_witnesses.empty());
  }
}

TEST_CASE("growth report invariants") {
  for (const char* text : {"3+x+y", "2+x*y^2", "x-2", "5", "4+x+y^-1+x*y", "x^2+y-5"}) {
    const GrowthReport r = growth_rate(parse_poly(text), 6, 128);
    CHECK(r.g >= r.h - 1e-9);
    CHECK((r.dichotomy == Dichotomy::excess) == (r.g - r.h > r.tie_tolerance));
    if (r.dichotomy == Dichotomy::excess) CHECK(r.lambda > 0.0);
    CHECK(r.lines_evaluated == static_cast<std::size_t>(6 * 13 + 6));
    CHECK(r.search_bound == 6);
    CHECK(r.quad_nodes == 128);
  }
}

TEST_CASE("a too-small search bound is flagged as uncertified") {
  const GrowthReport r = growth_rate(parse_poly("2+x*y^2"), 1, 256);
  CHECK_FALSE(r.certified);
  CHECK(std::abs(r.g_check - std::log(3.0)) < 1e-8);
}

TEST_CASE("dichotomy strings") {
  CHECK(dichotomy_from_string(to_string(Dichotomy::excess)) == Dichotomy::excess);
  CHECK(dichotomy_from_string(to_string(Dichotomy::balanced)) == Dichotomy::balanced);
  CHECK_THROWS(dichotomy_from_string("tied"));
}
