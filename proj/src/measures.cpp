#include "orbitgrowth/measures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace orbitgrowth {

namespace {

using cplx = std::complex<double>;

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// e^{2 pi i r / n} for r = 0..n-1, shared across calls.
const std::vector<cplx>& roots_of_unity(std::int64_t n) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<std::vector<cplx>>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[n];
  if (!slot) {
    slot = std::make_unique<std::vector<cplx>>(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < n; ++r) {
      // Reduce to [-1/2, 1/2) turns before scaling.
      const std::int64_t rr = 2 * r < n ? r : r - n;
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(rr) / static_cast<double>(n);
      (*slot)[static_cast<std::size_t>(r)] = {std::cos(ang), std::sin(ang)};
    }
  }
  return *slot;
}

double log_modulus(cplx z) {
  const double m2 = std::norm(z);
  if (!(m2 > 0.0)) throw std::domain_error("log|f| undefined: f vanishes at a quadrature node");
  return 0.5 * std::log(m2);
}

// Extended Euclid: returns (g, u, v) with p u + q v = g = gcd(|p|, |q|).
std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t p, std::int64_t q) {
  std::int64_t r0 = p, r1 = q, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - k * r1};
    std::tie(u0, u1) = std::pair{u1, u0 - k * u1};
    std::tie(v0, v1) = std::pair{v1, v0 - k * v1};
  }
  if (r0 < 0) {
    r0 = -r0;
    u0 = -u0;
    v0 = -v0;
  }
  return {r0, u0, v0};
}

struct LineValue {
  LineSubgroup line;
  double value;
};

struct Sweep {
  double h = 0.0;
  std::vector<LineValue> lines;
};

Sweep sweep_lines(const LaurentPoly& f, int bound, int nodes) {
  Sweep sw;
  sw.h = entropy(f, nodes);
  for (std::int64_t q = 0; q <= bound; ++q) {
    for (std::int64_t p = -bound; p <= bound; ++p) {
      if (q == 0 && p <= 0) continue;
      const LineSubgroup K(p, q);
      sw.lines.push_back({K, m_line(f, K, nodes)});
    }
  }
  std::sort(sw.lines.begin(), sw.lines.end(),
            [](const LineValue& x, const LineValue& y) { return x.line < y.line; });
  return sw;
}

double sweep_g(const Sweep& sw) {
  double g = sw.h;
  for (const auto& lv : sw.lines) g = std::max(g, lv.value);
  return g;
}

}  // namespace

LineSubgroup::LineSubgroup(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
  if (p == 0 && q == 0) throw std::invalid_argument("LineSubgroup: (p,q) = (0,0)");
  if (q_ < 0 || (q_ == 0 && p_ < 0)) {
    p_ = -p_;
    q_ = -q_;
  }
}

LineSubgroup approximating_line(const Sublattice& L) {
  if (L.a() < L.c()) return LineSubgroup(L.a(), 0);
  return LineSubgroup(L.b(), L.c());
}

double m_finite(const LaurentPoly& f, const Sublattice& L) {
  const std::int64_t a = L.a(), b = L.b(), c = L.c(), n = L.index();
  const auto& roots = roots_of_unity(n);
  struct Term {
    double coeff;
    std::int64_t alpha, beta;  // reduced mod n
  };
  std::vector<Term> terms;
  for (const auto& [e, coef] : f.coefficients()) {
    terms.push_back({static_cast<double>(coef), floor_mod(e.first, n), floor_mod(e.second, n)});
  }
  // Point (j/a, (a k - j b)/n): monomial x^alpha y^beta has phase
  // (alpha j c + beta (a k - j b)) / n.
  long double sum = 0.0L;
  for (std::int64_t j = 0; j < a; ++j) {
    for (std::int64_t k = 0; k < c; ++k) {
      const std::int64_t s_num = j * c;                       // s = s_num / n
      const std::int64_t t_num = floor_mod(a * k - j * b, n);  // t = t_num / n
      cplx v{0.0, 0.0};
      for (const Term& tm : terms) {
        const std::int64_t r = (tm.alpha * s_num % n + tm.beta * t_num % n) % n;
        v += tm.coeff * roots[static_cast<std::size_t>(r)];
      }
      sum += log_modulus(v);
    }
  }
  return static_cast<double>(sum / static_cast<long double>(n));
}

std::int64_t line_nodes(const LaurentPoly& f, const LineSubgroup& K, int nodes) {
  const auto [gam, u, v] = ext_gcd(K.p(), K.q());
  const std::int64_t p0 = K.p() / gam, q0 = K.q() / gam;
  std::int64_t degree = 0;
  for (const auto& [e, coef] : f.coefficients()) {
    degree = std::max(degree, std::abs(e.first * q0 - e.second * p0));
  }
  constexpr std::int64_t kBaseDegree = 8;
  return static_cast<std::int64_t>(nodes) * std::max<std::int64_t>(1, (degree + kBaseDegree - 1) / kBaseDegree);
}

namespace {
constexpr int kMaxRefinements = 4;
constexpr long double kRefineTolerance = 1e-13L;
}  // namespace

double m_line(const LaurentPoly& f, const LineSubgroup& K, int nodes) {
  if (nodes < 16) throw std::invalid_argument("m_line: nodes must be >= 16");
  const auto [gam, u, v] = ext_gcd(K.p(), K.q());
  const std::int64_t p0 = K.p() / gam, q0 = K.q() / gam;
  const std::int64_t n0 = line_nodes(f, K, nodes);

  // Component l is tau -> (q0 tau + l u / gam, -p0 tau + l v / gam); monomial
  // x^alpha y^beta there equals e((alpha u + beta v) l / gam) e(freq tau)
  // with freq = alpha q0 - beta p0.
  struct Term {
    cplx weight;
    std::int64_t freq;
  };
  long double total = 0.0L;
  std::vector<Term> terms;
  // Sum of log|f| over the points i/n, i = start, start + step, ...
  auto partial = [&](std::int64_t n, std::int64_t start, std::int64_t step) {
    const auto& roots = roots_of_unity(n);
    const std::size_t T = terms.size();
    std::vector<std::int64_t> phase(T), stride(T);
    for (std::size_t t = 0; t < T; ++t) {
      const std::int64_t fr = floor_mod(terms[t].freq, n);
      phase[t] = fr * start % n;
      stride[t] = fr * step % n;
    }
    long double acc = 0.0L;
    for (std::int64_t i = start; i < n; i += step) {
      cplx z{0.0, 0.0};
      for (std::size_t t = 0; t < T; ++t) {
        z += terms[t].weight * roots[static_cast<std::size_t>(phase[t])];
        phase[t] += stride[t];
        if (phase[t] >= n) phase[t] -= n;
      }
      acc += log_modulus(z);
    }
    return acc;
  };
  for (std::int64_t l = 0; l < gam; ++l) {
    terms.clear();
    for (const auto& [e, coef] : f.coefficients()) {
      const std::int64_t offset = floor_mod((e.first * u + e.second * v) % gam * l, gam);
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(offset) / static_cast<double>(gam);
      terms.push_back({static_cast<double>(coef) * cplx(std::cos(ang), std::sin(ang)), e.first * q0 - e.second * p0});
    }
    // Nested trapezoid: halve the spacing until successive rules agree.
    std::int64_t n = n0;
    long double sum = partial(n, 0, 1);
    long double value = sum / static_cast<long double>(n);
    for (int level = 0; level < kMaxRefinements; ++level) {
      sum += partial(2 * n, 1, 2);
      n *= 2;
      const long double next = sum / static_cast<long double>(n);
      const bool done = std::abs(next - value) < kRefineTolerance;
      value = next;
      if (done) break;
    }
    total += value;
  }
  return static_cast<double>(total / static_cast<long double>(gam));
}

double entropy(const LaurentPoly& f, int nodes) {
  if (nodes < 16) throw std::invalid_argument("entropy: nodes must be >= 16");
  const std::int64_t n = nodes;
  const auto& roots = roots_of_unity(n);
  struct Term {
    double coeff;
    std::int64_t alpha, beta;
  };
  std::vector<Term> terms;
  for (const auto& [e, coef] : f.coefficients()) {
    terms.push_back({static_cast<double>(coef), floor_mod(e.first, n), floor_mod(e.second, n)});
  }
  long double sum = 0.0L;
  for (std::int64_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::int64_t j = 0; j < n; ++j) {
      cplx z{0.0, 0.0};
      for (const Term& tm : terms) z += tm.coeff * roots[static_cast<std::size_t>((tm.alpha * i + tm.beta * j) % n)];
      row += log_modulus(z);
    }
    sum += row;
  }
  return static_cast<double>(sum / static_cast<long double>(n * n));
}

std::string to_string(Dichotomy d) { return d == Dichotomy::excess ? "excess" : "balanced"; }

Dichotomy dichotomy_from_string(const std::string& s) {
  if (s == "excess") return Dichotomy::excess;
  if (s == "balanced") return Dichotomy::balanced;
  throw std::invalid_argument("unknown dichotomy: " + s);
}

GrowthReport growth_rate(const LaurentPoly& f, int search_bound, int nodes, double tie_tolerance) {
  if (search_bound < 1) throw std::invalid_argument("growth_rate: search_bound must be >= 1");
  const Sweep sw = sweep_lines(f, search_bound, nodes);

  GrowthReport rep;
  rep.h = sw.h;
  rep.search_bound = search_bound;
  rep.quad_nodes = nodes;
  rep.tie_tolerance = tie_tolerance;
  rep.lines_evaluated = sw.lines.size();
  rep.g = sweep_g(sw);
  rep.dichotomy = rep.g - rep.h > tie_tolerance ? Dichotomy::excess : Dichotomy::balanced;

  // Ties resolve to the lexicographically first line (sw.lines is sorted).
  double best = -std::numeric_limits<double>::infinity();
  double lambda = std::numeric_limits<double>::infinity();
  for (const auto& lv : sw.lines) {
    if (lv.value > best) {
      best = lv.value;
      rep.best_line = {lv.line.p(), lv.line.q()};
    }
    const double gap = std::abs(rep.g - lv.value);
    if (gap > tie_tolerance) {
      lambda = std::min(lambda, gap);
    } else if (rep.dichotomy == Dichotomy::excess) {
      if (lv.line.q() == 0) {
        rep.A_witnesses.push_back(lv.line.p());
      } else {
        rep.B_witnesses.emplace_back(lv.line.p(), lv.line.q());
      }
    }
  }
  rep.lambda = std::isfinite(lambda) ? lambda : 0.0;
  std::sort(rep.A_witnesses.begin(), rep.A_witnesses.end());

  const Sweep check = sweep_lines(f, 2 * search_bound, 2 * nodes);
  rep.g_check = sweep_g(check);
  rep.certified = std::abs(rep.g_check - rep.g) < kCertifyTolerance;
  return rep;
}

}  // namespace orbitgrowth
