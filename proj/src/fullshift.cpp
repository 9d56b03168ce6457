#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "orbitgrowth/counting.hpp"

namespace orbitgrowth {

namespace {

// B_0..B_m, with B_1 = -1/2.
std::vector<mpq_class> bernoulli_numbers(int m) {
  std::vector<mpq_class> B(static_cast<std::size_t>(m) + 1);
  B[0] = 1;
  for (int n = 1; n <= m; ++n) {
    mpq_class acc = 0;
    BigInt binom = 1;  // C(n+1, k)
    for (int k = 0; k < n; ++k) {
      acc += mpq_class(binom) * B[static_cast<std::size_t>(k)];
      binom = binom * (n + 1 - k) / (k + 1);
    }
    B[static_cast<std::size_t>(n)] = -acc / (n + 1);
    B[static_cast<std::size_t>(n)].canonicalize();
  }
  return B;
}

BigInt factorial(int n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace

long double zeta_int(int s) {
  if (s < 2) throw std::invalid_argument("zeta_int: s must be >= 2");
  static const std::vector<mpq_class> B = bernoulli_numbers(16);
  constexpr int N = 20;
  const long double ls = static_cast<long double>(s);
  long double sum = 0.0L;
  for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -ls);
  const long double ln = N;
  sum += std::pow(ln, 1.0L - ls) / (ls - 1.0L) + 0.5L * std::pow(ln, -ls);
  // Euler-Maclaurin tail: B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}.
  long double rising = ls;
  for (int k = 1; 2 * k <= 16; ++k) {
    if (k > 1) rising *= (ls + 2 * k - 3) * (ls + 2 * k - 2);
    const mpq_class coef = B[static_cast<std::size_t>(2 * k)] / mpq_class(factorial(2 * k));
    sum += static_cast<long double>(coef.get_d()) * rising * std::pow(ln, -ls - 2 * k + 1);
  }
  return sum;
}

std::string FullShiftConstant::closed_form() const {
  std::ostringstream os;
  for (int z : odd_zetas) os << "zeta(" << z << ")·";
  if (rational_num != 1) os << rational_num << "·";
  os << "pi^" << pi_power;
  if (rational_den != 1) os << "/" << rational_den;
  return os.str();
}

FullShiftConstant fullshift_constant(int d) {
  if (d < 2 || d > 12) throw std::invalid_argument("fullshift_constant: d must be in [2, 12]");
  const std::vector<mpq_class> B = bernoulli_numbers(d);
  FullShiftConstant out;
  out.d = d;
  mpq_class rational(1, d - 1);
  long double value = 1.0L / static_cast<long double>(d - 1);
  for (int k = 2; k <= d; ++k) {
    value *= zeta_int(k);
    if (k % 2 == 1) {
      out.odd_zetas.push_back(k);
      continue;
    }
    // zeta(2j) = |B_2j| 2^{2j-1} pi^{2j} / (2j)!
    mpq_class z = abs(B[static_cast<std::size_t>(k)]);
    z *= mpq_class(BigInt(1) << (k - 1));
    z /= mpq_class(factorial(k));
    rational *= z;
    out.pi_power += k;
  }
  rational.canonicalize();
  out.rational_num = rational.get_num();
  out.rational_den = rational.get_den();
  out.value = static_cast<double>(value);
  return out;
}

double fullshift_mertens_partial(int d, std::int64_t N) {
  if (d < 2) throw std::invalid_argument("fullshift_mertens_partial: d must be >= 2");
  if (N < 1) throw std::invalid_argument("fullshift_mertens_partial: N must be >= 1");
  const std::vector<BigInt> a = sublattice_counts(d, N);
  double sum = 0.0, comp = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double x = a[static_cast<std::size_t>(n)].get_d() / static_cast<double>(n);
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace orbitgrowth
