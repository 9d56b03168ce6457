#pragma once

// The functional m(K) = integral of log|f| over a compact subgroup K of the
// torus against Haar measure, for finite subgroups (annihilators), the
// one-dimensional subgroups Ann<(p,q)>, and the whole torus.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orbitgrowth/laurent.hpp"
#include "orbitgrowth/lattice.hpp"

namespace orbitgrowth {

/// Ann<(p,q)> = {(s,t) : p s + q t in Z}.  (p,q) is kept with q > 0, or
/// q = 0 and p > 0; it is not reduced by gcd(p,q), which counts components.
/// J(a) is (a,0) and J(b,c) is (b,c).
class LineSubgroup {
public:
  LineSubgroup(std::int64_t p, std::int64_t q);

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }

  friend bool operator==(const LineSubgroup&, const LineSubgroup&) = default;
  friend auto operator<=>(const LineSubgroup&, const LineSubgroup&) = default;

private:
  std::int64_t p_, q_;
};

/// K(L): J(a) when a < c, otherwise J(b,c).
LineSubgroup approximating_line(const Sublattice& L);

inline constexpr int kDefaultQuadNodes = 512;
inline constexpr int kDefaultSearchBound = 64;
inline constexpr double kTieTolerance = 1e-8;
inline constexpr double kCertifyTolerance = 1e-8;

/// (1/[L]) sum over L^perp of log|f| = log F(L) / [L].
double m_finite(const LaurentPoly& f, const Sublattice& L);

/// Periodic trapezoid nodes used per component of Ann<(p,q)>.  Scales with
/// the degree of f restricted to the line so that the sampling density per
/// oscillation stays fixed.
std::int64_t line_nodes(const LaurentPoly& f, const LineSubgroup& K, int nodes);

/// m(Ann<(p,q)>) as the average over gcd(p,q) parallel closed geodesics, each
/// integrated with the periodic trapezoid rule starting at line_nodes points
/// and halving the spacing (at most 4 times) until successive rules agree to
/// 1e-13.
double m_line(const LaurentPoly& f, const LineSubgroup& K, int nodes);

/// Mahler measure m(T^2) by the nodes x nodes periodic trapezoid product rule.
double entropy(const LaurentPoly& f, int nodes = kDefaultQuadNodes);

enum class Dichotomy { excess, balanced };
std::string to_string(Dichotomy d);
Dichotomy dichotomy_from_string(const std::string& s);

struct GrowthReport {
  double h = 0.0;
  double g = 0.0;
  Dichotomy dichotomy = Dichotomy::balanced;
  std::vector<std::int64_t> A_witnesses;
  std::vector<std::pair<std::int64_t, std::int64_t>> B_witnesses;
  double lambda = 0.0;
  int search_bound = 0;
  int quad_nodes = 0;
  bool certified = false;
  double tie_tolerance = kTieTolerance;
  /// g from the re-run with doubled search bound and node count.
  double g_check = 0.0;
  std::pair<std::int64_t, std::int64_t> best_line{0, 0};
  std::size_t lines_evaluated = 0;

  friend bool operator==(const GrowthReport&, const GrowthReport&) = default;
};

/// Upper growth rate g = max(h, sup over Ann<(p,q)> with max(|p|,|q|) <=
/// search_bound of m), with witness sets, gap lambda, and a certification
/// re-run at doubled search_bound and nodes.
GrowthReport growth_rate(const LaurentPoly& f, int search_bound = kDefaultSearchBound,
                         int nodes = kDefaultQuadNodes, double tie_tolerance = kTieTolerance);

}  // namespace orbitgrowth
