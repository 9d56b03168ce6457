#include "orbitgrowth/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <tuple>
#include <vector>

namespace orbitgrowth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fractional part in [-1/2, 1/2).
double centered_frac(double x) { return x - std::floor(x + 0.5); }

std::complex<double> cis_turns(double turns) {
  const double ang = kTwoPi * centered_frac(turns);
  return {std::cos(ang), std::sin(ang)};
}

double phase(const Exponent& e, double s, double t) {
  const double fs = s - std::floor(s);
  const double ft = t - std::floor(t);
  return centered_frac(static_cast<double>(e.first) * fs) +
         centered_frac(static_cast<double>(e.second) * ft);
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  LaurentPoly parse() {
    std::map<Exponent, std::int64_t> acc;
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    parse_term(sign, acc);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char op = peek();
      if (op != '+' && op != '-') throw ParseError("expected '+' or '-'", pos_);
      ++pos_;
      parse_term(op == '-' ? -1 : 1, acc);
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    if (acc.empty()) throw ParseError("polynomial is identically zero", 0);
    return LaurentPoly(std::move(acc));
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::int64_t parse_unsigned() {
    const std::size_t start = pos_;
    std::int64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (__builtin_mul_overflow(value, 10, &value) ||
          __builtin_add_overflow(value, peek() - '0', &value)) {
        throw ParseError("integer too large", start);
      }
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer", start);
    return value;
  }

  void parse_term(int sign, std::map<Exponent, std::int64_t>& acc) {
    skip_ws();
    const std::size_t start = pos_;
    std::int64_t coeff = 1;
    bool have_any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_unsigned();
      have_any = true;
    }
    Exponent e{0, 0};
    for (;;) {
      skip_ws();
      const std::size_t star = pos_;
      const bool has_star = peek() == '*';
      if (has_star) {
        if (!have_any) throw ParseError("'*' without a preceding factor", pos_);
        ++pos_;
        skip_ws();
      }
      const char v = peek();
      if (v != 'x' && v != 'y') {
        if (has_star) throw ParseError("expected 'x' or 'y' after '*'", pos_);
        pos_ = star;
        break;
      }
      ++pos_;
      have_any = true;
      std::int64_t power = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        int esign = 1;
        if (peek() == '-' || peek() == '+') {
          esign = peek() == '-' ? -1 : 1;
          ++pos_;
          skip_ws();
        }
        power = esign * parse_unsigned();
      }
      std::int64_t& slot = v == 'x' ? e.first : e.second;
      if (__builtin_add_overflow(slot, power, &slot)) throw ParseError("exponent too large", pos_);
    }
    if (!have_any) throw ParseError("expected a term", start);
    std::int64_t& c = acc[e];
    if (__builtin_add_overflow(c, sign * coeff, &c)) throw ParseError("coefficient too large", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct Square {
  double s0, t0, side;
  int depth;
};

struct Sample {
  double modulus;
  double s, t;
};

std::pair<std::complex<double>, std::complex<double>> gradient(const LaurentPoly& f, double s,
                                                               double t) {
  std::complex<double> ds{0, 0}, dt{0, 0};
  for (const auto& [e, c] : f.coefficients()) {
    const std::complex<double> term = static_cast<double>(c) * cis_turns(phase(e, s, t)) *
                                      std::complex<double>(0.0, kTwoPi);
    ds += static_cast<double>(e.first) * term;
    dt += static_cast<double>(e.second) * term;
  }
  return {ds, dt};
}

// Damped Gauss-Newton on (Re f, Im f) = 0.
std::optional<std::pair<double, double>> newton_zero(const LaurentPoly& f, double s, double t,
                                                     double threshold) {
  for (int it = 0; it < 60; ++it) {
    const std::complex<double> v = eval(f, s, t);
    if (std::abs(v) < threshold) return std::pair{s - std::floor(s), t - std::floor(t)};
    const auto [fs, ft] = gradient(f, s, t);
    // J = [[Re fs, Re ft], [Im fs, Im ft]]
    const double j11 = fs.real(), j12 = ft.real(), j21 = fs.imag(), j22 = ft.imag();
    const double a11 = j11 * j11 + j21 * j21, a12 = j11 * j12 + j21 * j22,
                 a22 = j12 * j12 + j22 * j22;
    const double damp = 1e-14 * (a11 + a22) + 1e-300;
    const double g1 = -(j11 * v.real() + j21 * v.imag());
    const double g2 = -(j12 * v.real() + j22 * v.imag());
    const double det = (a11 + damp) * (a22 + damp) - a12 * a12;
    if (!(std::abs(det) > 0.0)) return std::nullopt;
    const double ds = ((a22 + damp) * g1 - a12 * g2) / det;
    const double dt = ((a11 + damp) * g2 - a12 * g1) / det;
    if (!std::isfinite(ds) || !std::isfinite(dt)) return std::nullopt;
    s += ds;
    t += dt;
  }
  return std::nullopt;
}

}  // namespace

LaurentPoly::LaurentPoly(std::map<Exponent, std::int64_t> coefficients) {
  for (const auto& [e, c] : coefficients) {
    if (c != 0) coeffs_.emplace(e, c);
  }
  if (coeffs_.empty()) throw std::invalid_argument("LaurentPoly: zero polynomial");
}

std::int64_t LaurentPoly::coefficient(const Exponent& e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? 0 : it->second;
}

std::int64_t LaurentPoly::l1_norm() const {
  std::int64_t s = 0;
  for (const auto& [e, c] : coeffs_) s += std::abs(c);
  return s;
}

double LaurentPoly::lipschitz_bound() const {
  double s = 0.0;
  for (const auto& [e, c] : coeffs_) {
    s += static_cast<double>(std::abs(c)) *
         static_cast<double>(std::abs(e.first) + std::abs(e.second));
  }
  return kTwoPi * s;
}

std::string LaurentPoly::to_string() const {
  // Terms by total degree, then by descending x and y exponents.
  std::vector<std::pair<Exponent, std::int64_t>> terms(coeffs_.begin(), coeffs_.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& u, const auto& v) {
    const auto key = [](const Exponent& e) {
      return std::tuple{std::abs(e.first) + std::abs(e.second), -e.first, -e.second};
    };
    return key(u.first) < key(v.first);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (c < 0) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    first = false;
    const std::int64_t mag = std::abs(c);
    const bool unit = e == Exponent{0, 0};
    bool need_star = false;
    if (mag != 1 || unit) {
      os << mag;
      need_star = true;
    }
    auto var = [&](char name, std::int64_t p) {
      if (p == 0) return;
      if (need_star) os << '*';
      os << name;
      if (p != 1) os << '^' << p;
      need_star = true;
    };
    var('x', e.first);
    var('y', e.second);
  }
  return os.str();
}

LaurentPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

std::complex<double> eval(const LaurentPoly& f, double s, double t) {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [e, c] : f.coefficients()) {
    sum += static_cast<double>(c) * cis_turns(phase(e, s, t));
  }
  return sum;
}

double log_abs(const LaurentPoly& f, double s, double t) {
  const double m = std::abs(eval(f, s, t));
  if (!(m > std::numeric_limits<double>::min())) {
    throw std::domain_error("log_abs: f vanishes at (" + std::to_string(s) + ", " +
                            std::to_string(t) + ")");
  }
  return std::log(m);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_expansive: return "certified_expansive";
    case Verdict::zero_found: return "zero_found";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "certified_expansive") return Verdict::certified_expansive;
  if (s == "zero_found") return Verdict::zero_found;
  if (s == "undetermined") return Verdict::undetermined;
  throw std::invalid_argument("unknown verdict: " + std::string(s));
}

ExpansivenessCertificate check_expansive(const LaurentPoly& f, int max_depth,
                                         double zero_threshold) {
  if (max_depth < 1) throw std::invalid_argument("check_expansive: max_depth must be >= 1");
  const double lip = f.lipschitz_bound();
  ExpansivenessCertificate cert;
  double lower_bound = std::numeric_limits<double>::infinity();
  bool undetermined = false;
  std::vector<std::pair<double, double>> zeros;

  std::vector<Square> work{{0.0, 0.0, 1.0, 0}};
  while (!work.empty()) {
    const Square sq = work.back();
    work.pop_back();
    ++cert.squares_examined;
    cert.max_depth_reached = std::max(cert.max_depth_reached, sq.depth);

    const double h = sq.side;
    const double pts[5][2] = {{sq.s0, sq.t0},
                              {sq.s0 + h, sq.t0},
                              {sq.s0, sq.t0 + h},
                              {sq.s0 + h, sq.t0 + h},
                              {sq.s0 + 0.5 * h, sq.t0 + 0.5 * h}};
    Sample best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (const auto& p : pts) {
      const double m = std::abs(eval(f, p[0], p[1]));
      if (m < best.modulus) best = {m, p[0], p[1]};
    }
    if (best.modulus < zero_threshold) {
      zeros.emplace_back(best.s - std::floor(best.s), best.t - std::floor(best.t));
      continue;
    }
    const double lb = best.modulus - lip * h * std::numbers::sqrt2;
    if (lb > 0.0 && (lb >= 0.5 * best.modulus || sq.depth == max_depth)) {
      lower_bound = std::min(lower_bound, lb);
      continue;
    }
    if (sq.depth < max_depth) {
      const double half = 0.5 * h;
      for (int i = 1; i >= 0; --i) {
        for (int j = 1; j >= 0; --j) {
          work.push_back({sq.s0 + i * half, sq.t0 + j * half, half, sq.depth + 1});
        }
      }
      continue;
    }
    if (auto z = newton_zero(f, best.s, best.t, zero_threshold)) {
      zeros.push_back(*z);
    } else {
      undetermined = true;
    }
  }

  if (!zeros.empty()) {
    cert.verdict = Verdict::zero_found;
    cert.zero_witness = *std::min_element(zeros.begin(), zeros.end());
  } else if (undetermined) {
    cert.verdict = Verdict::undetermined;
  } else {
    cert.verdict = Verdict::certified_expansive;
    cert.min_modulus_lower_bound = lower_bound;
  }
  return cert;
}

double variation_bound(const LaurentPoly& f, double min_modulus) {
  if (!(min_modulus > 0.0)) throw std::invalid_argument("variation_bound: min_modulus must be > 0");
  return f.lipschitz_bound() / min_modulus * std::numbers::sqrt2;
}

}  // namespace orbitgrowth
