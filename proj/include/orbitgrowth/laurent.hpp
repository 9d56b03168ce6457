#pragma once

// Integer Laurent polynomials in x, y viewed as functions on the 2-torus
// via x = e^{2 pi i s}, y = e^{2 pi i t}.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace orbitgrowth {

using Exponent = std::pair<std::int64_t, std::int64_t>;

class LaurentPoly {
public:
  /// Zero coefficients are dropped; an empty result is rejected.
  explicit LaurentPoly(std::map<Exponent, std::int64_t> coefficients);

  const std::map<Exponent, std::int64_t>& coefficients() const noexcept { return coeffs_; }
  std::int64_t coefficient(const Exponent& e) const;

  /// Sum of |c|.
  std::int64_t l1_norm() const;
  /// 2*pi * sum |c| (|a| + |b|): a Lipschitz constant of (s,t) -> f(e(s), e(t)).
  double lipschitz_bound() const;
  bool is_constant() const { return coeffs_.size() == 1 && coeffs_.begin()->first == Exponent{0, 0}; }

  /// Canonical text: terms by total degree, then descending exponents; re-parseable.
  std::string to_string() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
  std::map<Exponent, std::int64_t> coeffs_;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Grammar: expr := term (('+'|'-') term)* ; term := coeff? ('*'? var exp?)* ;
/// var := 'x' | 'y' ; exp := '^' signed-integer ; coeff := unsigned-integer.
/// A leading sign is also accepted.  Whitespace is ignored.
LaurentPoly parse_poly(std::string_view text);

/// f(e^{2 pi i s}, e^{2 pi i t}).
std::complex<double> eval(const LaurentPoly& f, double s, double t);

/// log |f(e(s), e(t))|; throws std::domain_error when the modulus vanishes.
double log_abs(const LaurentPoly& f, double s, double t);

enum class Verdict { certified_expansive, zero_found, undetermined };

std::string to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct ExpansivenessCertificate {
  Verdict verdict = Verdict::undetermined;
  double min_modulus_lower_bound = 0.0;
  std::pair<double, double> zero_witness{0.0, 0.0};
  int max_depth_reached = 0;
  std::size_t squares_examined = 0;

  friend bool operator==(const ExpansivenessCertificate&, const ExpansivenessCertificate&) = default;
};

inline constexpr double kZeroThreshold = 1e-12;
inline constexpr int kDefaultMaxDepth = 12;

/// Certifies that f has no zero on the torus by dyadic subdivision with a
/// first-order Lipschitz bound on each square.  Squares that cannot be
/// certified at max_depth are handed to a Newton search for a zero.
ExpansivenessCertificate check_expansive(const LaurentPoly& f, int max_depth = kDefaultMaxDepth,
                                         double zero_threshold = kZeroThreshold);

/// Upper bound for the total variation of log|f| along any segment of
/// length <= sqrt(2): lipschitz_bound / min_modulus * sqrt(2).
double variation_bound(const LaurentPoly& f, double min_modulus);

}  // namespace orbitgrowth
