#include "orbitgrowth/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <mpfr.h>

#include "orbitgrowth/laurent.hpp"

namespace orbitgrowth {

namespace {

const char* const kExamples[] = {"3+x+y", "2+x*y^2", "x-2", "5"};

std::string fmt(double x, int digits = 12) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& xs, const char* sep = "; ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

BigInt big_pow(long base, unsigned long e) {
  BigInt r;
  mpz_class b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

CriterionResult make_result(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

CriterionResult entropy_quadrature(const AcceptanceOptions& o) {
  CriterionResult r = make_result(1, "entropy quadrature");
  r.tolerance = "1e-9, < 5 s each";
  r.time_limit = 5.0;
  const std::pair<const char*, double> cases[] = {
      {"3+x+y", std::log(3.0)}, {"2+x*y^2", std::log(2.0)}, {"x-2", std::log(2.0)}};
  std::vector<std::string> meas, exp;
  bool ok = true;
  double slowest = 0.0;
  for (const auto& [text, target] : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const double h = entropy(parse_poly(text), o.quad_nodes);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    ok = ok && std::abs(h - target) < 1e-9;
    meas.push_back(std::string(text) + ": " + fmt(h, 15));
    exp.push_back(fmt(target, 15));
  }
  r.pass = ok && slowest < r.time_limit;
  r.measured = join(meas);
  r.expected = join(exp);
  return r;
}

CriterionResult growth(const AcceptanceOptions& o) {
  CriterionResult r = make_result(2, "growth rate");
  r.tolerance = "1e-8, certified, < 60 s each";
  r.time_limit = 60.0;
  std::vector<std::string> meas, exp;
  bool ok = true;
  double slowest = 0.0;
  auto run = [&](const char* text, double target, const std::function<bool(const GrowthReport&)>& witnesses,
                 const char* witness_text) {
    const auto t0 = std::chrono::steady_clock::now();
    const GrowthReport g = growth_rate(parse_poly(text), o.search_bound, o.quad_nodes);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const bool good = std::abs(g.g - target) < 1e-8 && g.certified && witnesses(g);
    ok = ok && good;
    std::ostringstream os;
    os << text << ": g=" << fmt(g.g, 12) << " " << to_string(g.dichotomy) << " A={" << join(g.A_witnesses, ",")
       << "} B={";
    for (std::size_t i = 0; i < g.B_witnesses.size(); ++i) {
      os << (i ? "," : "") << "(" << g.B_witnesses[i].first << "," << g.B_witnesses[i].second << ")";
    }
    os << "} certified=" << (g.certified ? "true" : "false");
    meas.push_back(os.str());
    exp.push_back(std::string(text) + ": g=" + fmt(target, 12) + " " + witness_text);
  };
  auto has_b = [](const GrowthReport& g, std::int64_t b, std::int64_t c) {
    return std::find(g.B_witnesses.begin(), g.B_witnesses.end(), std::pair{b, c}) != g.B_witnesses.end();
  };
  auto has_a = [](const GrowthReport& g, std::int64_t a) {
    return std::find(g.A_witnesses.begin(), g.A_witnesses.end(), a) != g.A_witnesses.end();
  };
  run("2+x*y^2", std::log(3.0),
      [&](const GrowthReport& g) { return g.dichotomy == Dichotomy::excess && has_b(g, 1, 2) && g.A_witnesses.empty(); },
      "excess, B contains (1,2), A empty");
  run("3+x+y", std::log(4.0),
      [&](const GrowthReport& g) { return g.dichotomy == Dichotomy::excess && has_a(g, 1) && has_b(g, 0, 1); },
      "excess, A contains 1, B contains (0,1)");
  auto balanced = [](const GrowthReport& g) { return g.dichotomy == Dichotomy::balanced && std::abs(g.g - g.h) < 1e-8; };
  run("x-2", std::log(2.0), balanced, "balanced, g=h");
  run("5", std::log(5.0), balanced, "balanced, g=h");
  run("2", std::log(2.0), balanced, "balanced, g=h");
  r.pass = ok && slowest < r.time_limit;
  r.measured = join(meas);
  r.expected = join(exp);
  return r;
}

CriterionResult exact_counts(const AcceptanceOptions& o) {
  CriterionResult r = make_result(3, "exact periodic-point counts");
  r.tolerance = "exact equality";
  r.time_limit = 120.0;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  auto check = [&](const LaurentPoly& f, const Sublattice& L, const BigInt& want) {
    ++checked;
    const BigInt got = periodic_points(f, L, o.exact_threshold);
    if (got != want) {
      std::ostringstream os;
      os << f.to_string() << " " << L << ": " << got << " != " << want;
      failures.push_back(os.str());
    }
  };
  const LaurentPoly f1 = parse_poly("3+x+y");
  for (std::int64_t a = 1; a <= 30; ++a) {
    check(f1, Sublattice(a, 0, 1), big_pow(4, a) - big_pow(-1, a));
  }
  const LaurentPoly f2 = parse_poly("2+x*y^2");
  for (std::int64_t a = 2; a <= 15; ++a) check(f2, Sublattice(a, 1, 2), big_pow(3, 2 * a));
  const LaurentPoly f3 = parse_poly("x-2");
  for (std::int64_t n = 1; n <= 40; ++n) {
    for (const Sublattice& L : enumerate_sublattices(n)) {
      check(f3, L, big_pow(big_pow(2, L.a()).get_si() - 1, static_cast<unsigned long>(L.c())));
    }
  }
  for (long b : {2L, 5L}) {
    const LaurentPoly fb = parse_poly(std::to_string(b));
    for (std::int64_t n = 1; n <= 40; ++n) {
      for (const Sublattice& L : enumerate_sublattices(n)) check(fb, L, big_pow(b, n));
    }
  }
  r.pass = failures.empty();
  r.measured = std::to_string(checked - failures.size()) + "/" + std::to_string(checked) + " equal" +
               (failures.empty() ? "" : "; first failure " + failures.front());
  r.expected = std::to_string(checked) + "/" + std::to_string(checked) + " equal";
  return r;
}

CriterionResult moebius_integrity(const AcceptanceOptions& o) {
  CriterionResult r = make_result(4, "Moebius inversion and orbit integrity");
  r.tolerance = "exact";
  r.time_limit = 120.0;
  std::vector<Sublattice> lats;
  for (std::int64_t n = 1; n <= 24; ++n) {
    for (const Sublattice& L : enumerate_sublattices(n)) lats.push_back(L);
  }
  std::size_t identity_ok = 0, identity_total = 0;
  std::string failure;
  for (const char* text : kExamples) {
    CountCache cache(parse_poly(text), o.exact_threshold);
    for (const Sublattice& L : lats) {
      ++identity_total;
      try {
        BigInt sum = 0;
        for (const Sublattice& up : superlattices(L)) sum += BigInt(static_cast<long>(up.index())) * orbit_count(cache, up);
        if (sum == cache.periodic_points(L)) {
          ++identity_ok;
        } else if (failure.empty()) {
          std::ostringstream os;
          os << text << " " << L << ": sum [L']O(L') != F(L)";
          failure = os.str();
        }
      } catch (const IntegrityError& e) {
        if (failure.empty()) failure = e.what();
      }
    }
  }

  // Random integer F on the upward-closed set of lattices with index <= 24,
  // inverted and re-summed over the rationals.
  MoebiusCache mu;
  std::unordered_map<Sublattice, std::size_t, SublatticeHash> pos;
  for (std::size_t i = 0; i < lats.size(); ++i) pos[lats[i]] = i;
  std::vector<std::vector<std::pair<std::size_t, long>>> up(lats.size());
  for (std::size_t i = 0; i < lats.size(); ++i) {
    for (const Sublattice& Lp : superlattices(lats[i])) {
      up[i].emplace_back(pos.at(Lp), static_cast<long>(moebius(Lp, lats[i], mu)));
    }
  }
  std::mt19937_64 rng(o.seed);
  std::size_t trials_ok = 0;
  constexpr int kTrials = 100;
  std::vector<BigInt> F(lats.size());
  std::vector<mpq_class> O(lats.size());
  for (int t = 0; t < kTrials; ++t) {
    for (BigInt& x : F) x = static_cast<long>(rng() % 2001) - 1000;
    for (std::size_t i = 0; i < lats.size(); ++i) {
      mpq_class s = 0;
      for (const auto& [j, m] : up[i]) s += mpq_class(m) * mpq_class(F[j]);
      O[i] = s / static_cast<long>(lats[i].index());
    }
    bool trial_ok = true;
    for (std::size_t i = 0; i < lats.size(); ++i) {
      mpq_class g = 0;
      for (const auto& [j, m] : up[i]) g += static_cast<long>(lats[j].index()) * O[j];
      if (g != mpq_class(F[i])) trial_ok = false;
    }
    trials_ok += trial_ok ? 1 : 0;
  }
  r.pass = identity_ok == identity_total && trials_ok == kTrials;
  r.measured = "orbit identity " + std::to_string(identity_ok) + "/" + std::to_string(identity_total) +
               ", round trips " + std::to_string(trials_ok) + "/" + std::to_string(kTrials) +
               (failure.empty() ? "" : "; " + failure);
  r.expected = "orbit identity " + std::to_string(identity_total) + "/" + std::to_string(identity_total) +
               ", round trips " + std::to_string(kTrials) + "/" + std::to_string(kTrials);
  return r;
}

CriterionResult mertens_slopes(const AcceptanceOptions& o) {
  CriterionResult r = make_result(5, "Mertens slopes");
  r.tolerance = "3+x+y: S in [1.8, 2.2]; 2+x*y^2: S in [0.35, 0.65]; < 600 s each";
  r.time_limit = 600.0;
  constexpr std::int64_t N = 150;
  struct Case {
    const char* text;
    double g, lo, hi;
  };
  const Case cases[] = {{"3+x+y", std::log(4.0), 1.8, 2.2}, {"2+x*y^2", std::log(3.0), 0.35, 0.65}};
  bool ok = true;
  double slowest = 0.0;
  std::vector<std::string> meas, exp;
  for (const Case& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    CountCache cache(parse_poly(c.text), o.exact_threshold);
    const CountSeries s = mertens(cache, 4 * N, c.g);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const double S = (s.rows[4 * N - 1].mertens - s.rows[N - 1].mertens) / std::log(4.0);
    ok = ok && S >= c.lo && S <= c.hi;
    meas.push_back(std::string(c.text) + ": S(150)=" + fmt(S, 6));
    exp.push_back("[" + fmt(c.lo) + ", " + fmt(c.hi) + "]");
  }
  r.pass = ok && slowest < r.time_limit;
  r.measured = join(meas);
  r.expected = join(exp);
  return r;
}

CriterionResult linear_regime(const AcceptanceOptions& o) {
  CriterionResult r = make_result(6, "linear regime for x-2");
  r.tolerance = "max/min of M(N)/N <= 3 and M(400)/400 > 0.05";
  r.time_limit = 600.0;
  CountCache cache(parse_poly("x-2"), o.exact_threshold);
  const CountSeries s = mertens(cache, 400, std::log(2.0));
  std::vector<double> ratios;
  for (std::int64_t n : {100, 200, 300, 400}) ratios.push_back(s.rows[static_cast<std::size_t>(n - 1)].mertens / static_cast<double>(n));
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double spread = *hi / *lo;
  r.pass = spread <= 3.0 && ratios.back() > 0.05;
  std::vector<std::string> parts;
  for (double x : ratios) parts.push_back(fmt(x, 6));
  r.measured = "M(N)/N at 100..400 = " + join(parts, ", ") + "; max/min=" + fmt(spread, 6);
  r.expected = "max/min <= 3, M(400)/400 > 0.05";
  return r;
}

CriterionResult pi_ratio(const AcceptanceOptions& o) {
  CriterionResult r = make_result(7, "bounded orbit-count ratio");
  r.tolerance = "ratio in [1e-3, 1e3], max/min <= 1e2";
  r.time_limit = 300.0;
  CountCache cache(parse_poly("3+x+y"), o.exact_threshold);
  const CountSeries s = mertens(cache, 60, std::log(4.0));
  double lo = INFINITY, hi = 0.0;
  bool in_range = true;
  for (std::int64_t n = 20; n <= 60; ++n) {
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, s.rows[static_cast<std::size_t>(n - 1)].pi.get_mpz_t());
    const double ratio = std::exp(std::log(mant) + static_cast<double>(e) * std::numbers::ln2 -
                                  static_cast<double>(n) * std::log(4.0));
    in_range = in_range && ratio >= 1e-3 && ratio <= 1e3;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  r.pass = in_range && hi / lo <= 1e2;
  r.measured = "ratio range [" + fmt(lo, 6) + ", " + fmt(hi, 6) + "], max/min=" + fmt(hi / lo, 6);
  r.expected = "within [1e-3, 1e3], max/min <= 100";
  return r;
}

CriterionResult table_one(const AcceptanceOptions&) {
  CriterionResult r = make_result(8, "full-shift constants");
  r.tolerance = "10 significant digits; partial sum ratio in [0.98, 1.02]";
  r.time_limit = 30.0;
  struct Row {
    int d;
    long den;
    int pi_power;
    std::vector<int> zetas;
  };
  const Row table[] = {{2, 6, 2, {}},
                       {3, 12, 2, {3}},
                       {4, 1620, 6, {3}},
                       {5, 2160, 6, {3, 5}},
                       {6, 2551500, 12, {3, 5}},
                       {7, 3061800, 12, {3, 5, 7}},
                       {8, 33756345000L, 20, {3, 5, 7}}};
  bool ok = true;
  double worst = 0.0;
  mpfr_t ref, tmp;
  mpfr_init2(ref, 256);
  mpfr_init2(tmp, 256);
  for (const Row& row : table) {
    const FullShiftConstant c = fullshift_constant(row.d);
    mpfr_const_pi(ref, MPFR_RNDN);
    mpfr_pow_ui(ref, ref, static_cast<unsigned long>(row.pi_power), MPFR_RNDN);
    mpfr_div_ui(ref, ref, static_cast<unsigned long>(row.den), MPFR_RNDN);
    for (int z : row.zetas) {
      mpfr_zeta_ui(tmp, static_cast<unsigned long>(z), MPFR_RNDN);
      mpfr_mul(ref, ref, tmp, MPFR_RNDN);
    }
    const double want = mpfr_get_d(ref, MPFR_RNDN);
    const double rel = std::abs(c.value - want) / want;
    worst = std::max(worst, rel);
    const bool form = c.rational_num == 1 && c.rational_den == row.den && c.pi_power == row.pi_power &&
                      c.odd_zetas == row.zetas;
    ok = ok && rel < 5e-11 && form;
  }
  mpfr_clear(ref);
  mpfr_clear(tmp);
  const double partial = fullshift_mertens_partial(2, 100000);
  const double ratio = partial / (std::numbers::pi * std::numbers::pi / 6.0 * 1e5);
  r.pass = ok && ratio >= 0.98 && ratio <= 1.02;
  r.measured = "worst relative error " + fmt(worst, 3) + ", closed forms " + (ok ? "match" : "differ") +
               ", partial ratio " + fmt(ratio, 8);
  r.expected = "relative error < 5e-11 for d=2..8, ratio in [0.98, 1.02]";
  return r;
}

CriterionResult lemma_bound(const AcceptanceOptions& o) {
  CriterionResult r = make_result(9, "finite/line measure approximation bound");
  r.tolerance = "zero violations of |m_finite - m_line| <= alpha/max(a,c) (+1e-12 roundoff)";
  r.time_limit = 120.0;
  std::vector<Sublattice> pool;
  for (std::int64_t n = 1; n <= 400; ++n) {
    for (const Sublattice& L : enumerate_sublattices(n)) pool.push_back(L);
  }
  std::mt19937_64 rng(o.seed);
  std::vector<Sublattice> sample;
  for (int i = 0; i < 200; ++i) sample.push_back(pool[rng() % pool.size()]);

  std::size_t violations = 0;
  std::string first;
  for (const char* text : kExamples) {
    const LaurentPoly f = parse_poly(text);
    const double alpha = variation_bound(f, check_expansive(f).min_modulus_lower_bound);
    for (const Sublattice& L : sample) {
      const double d = std::abs(m_finite(f, L) - m_line(f, approximating_line(L), o.quad_nodes));
      const double bound = alpha / static_cast<double>(std::max(L.a(), L.c()));
      if (d > bound + 1e-12) {
        ++violations;
        if (first.empty()) {
          std::ostringstream os;
          os << "; first " << text << " " << L << " diff=" << fmt(d, 6) << " bound=" << fmt(bound, 6);
          first = os.str();
        }
      }
    }
  }
  r.pass = violations == 0;
  r.measured = std::to_string(violations) + " violations in 4x200 checks" + first;
  r.expected = "0 violations";
  return r;
}

CriterionResult expansiveness(const AcceptanceOptions&) {
  CriterionResult r = make_result(10, "expansiveness certification");
  r.tolerance = "witness within 1e-3 of (1/3, 2/3)";
  r.time_limit = 30.0;
  bool ok = true;
  std::vector<std::string> meas;
  for (const char* text : kExamples) {
    const ExpansivenessCertificate c = check_expansive(parse_poly(text));
    ok = ok && c.verdict == Verdict::certified_expansive && c.min_modulus_lower_bound > 0.0;
    meas.push_back(std::string(text) + ": " + to_string(c.verdict));
  }
  const ExpansivenessCertificate z = check_expansive(parse_poly("1+x+y"));
  auto torus_dist = [](double x, double y) {
    const double d = std::abs(x - y) - std::floor(std::abs(x - y));
    return std::min(d, 1.0 - d);
  };
  const double dist = std::hypot(torus_dist(z.zero_witness.first, 1.0 / 3.0), torus_dist(z.zero_witness.second, 2.0 / 3.0));
  ok = ok && z.verdict == Verdict::zero_found && dist < 1e-3;
  meas.push_back("1+x+y: " + to_string(z.verdict) + " at (" + fmt(z.zero_witness.first, 9) + ", " +
                 fmt(z.zero_witness.second, 9) + ")");
  r.pass = ok;
  r.measured = join(meas);
  r.expected = "four certified_expansive; 1+x+y zero_found near (1/3, 2/3)";
  return r;
}

}  // namespace

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " | measured: " << r.measured
     << " | expected: " << r.expected << " | tolerance: " << r.tolerance << " | " << fmt(r.seconds, 3)
     << " s";
  return os.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& out) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  const Fn criteria[] = {entropy_quadrature, growth,       exact_counts,   moebius_integrity, mertens_slopes,
                         linear_regime,      pi_ratio,     table_one,      lemma_bound,       expansiveness};
  std::vector<CriterionResult> results;
  for (int id = 1; id <= 10; ++id) {
    if (!opts.only.empty() && !opts.only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criteria[id - 1](opts);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.pass = false;
      r.measured = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.time_limit > 0.0 && r.id != 1 && r.id != 2 && r.id != 5 && r.seconds > r.time_limit) {
      r.pass = false;
      r.measured += " (time limit " + fmt(r.time_limit) + " s exceeded)";
    }
    out << format_line(r) << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace orbitgrowth
