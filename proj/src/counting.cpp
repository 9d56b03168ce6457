#include "orbitgrowth/counting.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <mutex>
#include <numbers>

#include "modular.hpp"

namespace orbitgrowth {

namespace {

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// Neumaier summation.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double log_big(const BigInt& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::abs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

// x e^{-shift} for x >= 0, evaluated in log space.
double scaled(const BigInt& x, double shift) {
  if (sgn(x) == 0) return 0.0;
  return std::exp(log_big(x) - shift);
}

// Flattened exponent indices: for point i (in (j,k) order) and term m, the
// character value of x^alpha y^beta is omega^{index[i * terms + m]}.
std::vector<std::uint32_t> character_indices(const LaurentPoly& f, const Sublattice& L) {
  const std::int64_t a = L.a(), b = L.b(), c = L.c(), n = L.index();
  const std::size_t T = f.coefficients().size();
  std::vector<std::int64_t> alpha, beta;
  for (const auto& [e, coef] : f.coefficients()) {
    alpha.push_back(floor_mod(e.first, n));
    beta.push_back(floor_mod(e.second, n));
  }
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(n) * T);
  std::size_t pos = 0;
  for (std::int64_t j = 0; j < a; ++j) {
    const std::int64_t s_num = j * c;
    for (std::int64_t k = 0; k < c; ++k) {
      const std::int64_t t_num = floor_mod(a * k - j * b, n);
      for (std::size_t m = 0; m < T; ++m) {
        idx[pos++] = static_cast<std::uint32_t>((alpha[m] * s_num % n + beta[m] * t_num % n) % n);
      }
    }
  }
  return idx;
}

}  // namespace

BigInt periodic_points_determinant(const LaurentPoly& f, const Sublattice& L) {
  const std::int64_t a = L.a(), b = L.b(), c = L.c();
  const std::size_t n = static_cast<std::size_t>(L.index());
  // Coset representatives (x, y), 0 <= x < a, 0 <= y < c, indexed y*a + x.
  auto reduce = [&](std::int64_t x, std::int64_t y) {
    const std::int64_t q = (y >= 0 ? y : y - c + 1) / c;
    y -= q * c;
    x = floor_mod(x - q * b, a);
    return static_cast<std::size_t>(y * a + x);
  };
  std::vector<BigInt> M(n * n, 0);
  for (std::int64_t y = 0; y < c; ++y) {
    for (std::int64_t x = 0; x < a; ++x) {
      const std::size_t u = static_cast<std::size_t>(y * a + x);
      for (const auto& [e, coef] : f.coefficients()) {
        M[u * n + reduce(x + e.first, y + e.second)] += coef;
      }
    }
  }

  int sign = 1;
  BigInt prev = 1;
  BigInt tmp;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(M[k * n + k]) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && sgn(M[piv * n + k]) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(M[k * n + j], M[piv * n + j]);
      sign = -sign;
    }
    const BigInt& pivot = M[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const BigInt& lead = M[i * n + k];
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt& target = M[i * n + j];
        mpz_mul(target.get_mpz_t(), target.get_mpz_t(), pivot.get_mpz_t());
        mpz_mul(tmp.get_mpz_t(), lead.get_mpz_t(), M[k * n + j].get_mpz_t());
        mpz_sub(target.get_mpz_t(), target.get_mpz_t(), tmp.get_mpz_t());
        mpz_divexact(target.get_mpz_t(), target.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
  }
  BigInt det = M[n * n - 1];
  if (sign < 0) det = -det;
  return abs(det);
}

BigInt periodic_points_modular(const LaurentPoly& f, const Sublattice& L) {
  using namespace detail;
  const std::int64_t n = L.index();
  const std::size_t T = f.coefficients().size();
  const std::vector<std::uint32_t> idx = character_indices(f, L);

  // |det| <= (sum |c|)^n; the modulus must exceed twice that.
  const double bits_needed =
      static_cast<double>(n) * std::log2(static_cast<double>(f.l1_norm())) + 2.0;
  std::size_t count = static_cast<std::size_t>(std::ceil((bits_needed + 1.0) / 61.0));
  const std::vector<RootedPrime> primes = rooted_primes(n, count);

  BigInt X = 0, P = 1;
  std::vector<u64> pw(static_cast<std::size_t>(n));
  std::vector<u64> coef(T);
  for (const RootedPrime& rp : primes) {
    const Montgomery mg(rp.p);
    const u64 w = mg.to(rp.omega);
    pw[0] = mg.one();
    for (std::int64_t r = 1; r < n; ++r) pw[static_cast<std::size_t>(r)] = mg.mul(pw[static_cast<std::size_t>(r - 1)], w);
    std::size_t m = 0;
    for (const auto& [e, cf] : f.coefficients()) {
      const u64 cm = cf >= 0 ? static_cast<u64>(cf) % rp.p : rp.p - static_cast<u64>(-cf) % rp.p;
      coef[m++] = mg.to(cm);
    }
    u64 prod = mg.one();
    const std::uint32_t* ix = idx.data();
    for (std::int64_t pt = 0; pt < n; ++pt, ix += T) {
      u64 v = 0;
      for (std::size_t t = 0; t < T; ++t) v = mg.add(v, mg.mul(coef[t], pw[ix[t]]));
      prod = mg.mul(prod, v);
    }
    const u64 residue = mg.from(prod);

    // Garner step: X += P * ((residue - X) / P mod p).
    const u64 x_mod = mpz_fdiv_ui(X.get_mpz_t(), rp.p);
    const u64 p_mod = mpz_fdiv_ui(P.get_mpz_t(), rp.p);
    const u64 diff = residue >= x_mod ? residue - x_mod : residue + rp.p - x_mod;
    const u64 t = mulmod(diff, powmod(p_mod, rp.p - 2, rp.p), rp.p);
    X += P * BigInt(static_cast<unsigned long>(t));
    P *= BigInt(static_cast<unsigned long>(rp.p));
  }
  BigInt half = P / 2;
  if (X > half) X -= P;
  return abs(X);
}

std::optional<BigInt> periodic_points_float(const LaurentPoly& f, const Sublattice& L) {
  const std::int64_t n = L.index();
  const std::size_t T = f.coefficients().size();
  const std::vector<std::uint32_t> idx = character_indices(f, L);
  std::vector<long double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    const std::int64_t rr = 2 * r < n ? r : r - n;
    const long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(rr) /
                            static_cast<long double>(n);
    re[static_cast<std::size_t>(r)] = std::cos(ang);
    im[static_cast<std::size_t>(r)] = std::sin(ang);
  }
  std::vector<long double> coef;
  for (const auto& [e, cf] : f.coefficients()) coef.push_back(static_cast<long double>(cf));

  long double log_sum = 0.0L;
  const std::uint32_t* ix = idx.data();
  for (std::int64_t pt = 0; pt < n; ++pt, ix += T) {
    long double vr = 0.0L, vi = 0.0L;
    for (std::size_t t = 0; t < T; ++t) {
      vr += coef[t] * re[ix[t]];
      vi += coef[t] * im[ix[t]];
    }
    const long double m2 = vr * vr + vi * vi;
    if (!(m2 > 0.0L)) return std::nullopt;
    log_sum += 0.5L * std::log(m2);
  }
  // Integers are exact in long double only below 2^64.
  if (log_sum > 63.0L * std::numbers::ln2_v<long double>) return std::nullopt;
  const long double value = std::exp(log_sum);
  const long double rounded = std::nearbyint(value);
  const long double tracked_error = value * static_cast<long double>(16 * n + 16) * LDBL_EPSILON;
  if (std::abs(value - rounded) >= 0.25L || tracked_error >= 0.25L) return std::nullopt;
  BigInt out;
  mpz_set_ui(out.get_mpz_t(), static_cast<unsigned long>(rounded));
  return out;
}

double log_periodic_points(const LaurentPoly& f, const Sublattice& L) {
  return static_cast<double>(L.index()) * m_finite(f, L);
}

BigInt periodic_points(const LaurentPoly& f, const Sublattice& L, std::int64_t exact_threshold) {
  if (L.index() <= exact_threshold) return periodic_points_determinant(f, L);
  return periodic_points_modular(f, L);
}

CountCache::CountCache(LaurentPoly f, std::int64_t exact_threshold)
    : f_(std::move(f)), exact_threshold_(exact_threshold) {}

BigInt CountCache::periodic_points(const Sublattice& L) {
  {
    std::shared_lock lock(mutex_);
    auto it = F_.find(L);
    if (it != F_.end()) return it->second;
  }
  BigInt value = orbitgrowth::periodic_points(f_, L, exact_threshold_);
  std::unique_lock lock(mutex_);
  F_.insert_or_assign(L, value);
  return value;
}

std::size_t CountCache::size() const {
  std::shared_lock lock(mutex_);
  return F_.size();
}

BigInt orbit_count(CountCache& cache, const Sublattice& L) {
  BigInt sum = 0;
  for (const Sublattice& up : superlattices(L)) {
    const std::int64_t mu = moebius_by_quotient(up, L, cache.moebius_cache());
    if (mu == 0) continue;
    sum += BigInt(static_cast<long>(mu)) * cache.periodic_points(up);
  }
  const BigInt n(static_cast<long>(L.index()));
  if (sgn(sum) < 0 || !mpz_divisible_p(sum.get_mpz_t(), n.get_mpz_t())) {
    std::ostringstream os;
    os << "orbit_count: Moebius sum " << sum << " for " << L << " is not a non-negative multiple of "
       << L.index();
    throw IntegrityError(os.str());
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), sum.get_mpz_t(), n.get_mpz_t());
  return out;
}

BigInt pi_count(CountCache& cache, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("pi_count: N must be >= 1");
  BigInt pi = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    for (const Sublattice& L : enumerate_sublattices(n)) pi += orbit_count(cache, L);
  }
  return pi;
}

int witness_class(const Sublattice& L, const std::vector<std::int64_t>& A,
                  const std::vector<std::pair<std::int64_t, std::int64_t>>& B) {
  const bool in_a = std::find(A.begin(), A.end(), L.a()) != A.end();
  const bool in_b = std::find(B.begin(), B.end(), std::pair{L.b(), L.c()}) != B.end();
  if (in_a) return in_b ? 1 : 2;
  return in_b ? 3 : 4;
}

CountSeries mertens(CountCache& cache, std::int64_t N, double g, const std::vector<std::int64_t>& A,
                    const std::vector<std::pair<std::int64_t, std::int64_t>>& B,
                    double tie_tolerance) {
  if (!(g > 0.0)) throw std::invalid_argument("mertens: g must be > 0");
  if (N < 1) throw std::invalid_argument("mertens: N must be >= 1");
  CountSeries series;
  series.g = g;
  series.tie_tolerance = tie_tolerance;
  series.A = A;
  series.B = B;
  series.rows.reserve(static_cast<std::size_t>(N));

  BigInt pi = 0;
  CompensatedSum M, M1, parts[4];
  for (std::int64_t n = 1; n <= N; ++n) {
    const std::vector<Sublattice> lats = enumerate_sublattices(n);
    const double shift = g * static_cast<double>(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    CountRow row;
    row.n = n;
    row.a_n = static_cast<std::int64_t>(lats.size());
    row.sum_F = 0;
    for (const Sublattice& L : lats) {
      const BigInt F = cache.periodic_points(L);
      const BigInt O = orbit_count(cache, L);
      row.sum_F += F;
      pi += O;
      M.add(scaled(O, shift));
      const double main = inv_n * scaled(F, shift);
      M1.add(main);
      parts[witness_class(L, A, B) - 1].add(main);
    }
    row.pi = pi;
    row.mertens = M.value();
    row.m1 = M1.value();
    row.m2 = row.mertens - row.m1;
    row.n1 = parts[0].value();
    row.n2 = parts[1].value();
    row.n3 = parts[2].value();
    row.n4 = parts[3].value();
    series.rows.push_back(std::move(row));
  }
  return series;
}

}  // namespace orbitgrowth
