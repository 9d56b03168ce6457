#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "orbitgrowth/acceptance.hpp"
#include "orbitgrowth/counting.hpp"
#include "orbitgrowth/report.hpp"

using namespace orbitgrowth;

namespace {

enum Exit { kOk = 0, kParse = 1, kNotExpansive = 2, kUndetermined = 3, kIntegrity = 4 };

struct Common {
  std::string poly;
  int quad_nodes = kDefaultQuadNodes;
  int search_bound = kDefaultSearchBound;
  std::int64_t exact_threshold = kDefaultExactThreshold;
  int max_depth = kDefaultMaxDepth;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--poly", c.poly, "Laurent polynomial, e.g. \"3+x+y\"")->required();
  cmd->add_option("--quad-nodes", c.quad_nodes, "trapezoid nodes per direction")
      ->capture_default_str()
      ->check(CLI::Range(16, 1 << 16));
  cmd->add_option("--search-bound", c.search_bound, "max(|p|,|q|) for the line search")
      ->capture_default_str()
      ->check(CLI::Range(4, 4096));
  cmd->add_option("--exact-threshold", c.exact_threshold, "largest index for the determinant path")
      ->capture_default_str()
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{4096}));
  cmd->add_option("--max-depth", c.max_depth, "subdivision depth for the expansiveness check")
      ->capture_default_str()
      ->check(CLI::Range(1, 30));
}

AnalysisParameters parameters(const Common& c) {
  AnalysisParameters p;
  p.quad_nodes = c.quad_nodes;
  p.search_bound = c.search_bound;
  p.exact_threshold = c.exact_threshold;
  p.max_depth = c.max_depth;
  return p;
}

std::optional<LaurentPoly> parse_or_report(const std::string& text) {
  try {
    return parse_poly(text);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n  " << text << "\n  " << std::string(e.position(), ' ')
              << "^\n";
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  }
  return std::nullopt;
}

int verdict_exit(const ExpansivenessCertificate& c) {
  switch (c.verdict) {
    case Verdict::certified_expansive: return kOk;
    case Verdict::zero_found: return kNotExpansive;
    case Verdict::undetermined: return kUndetermined;
  }
  return kUndetermined;
}

int cmd_analyze(const Common& c) {
  const auto f = parse_or_report(c.poly);
  if (!f) return kParse;
  const AnalysisReport rep = analyze(*f, parameters(c));
  std::cout << to_json(rep).dump(2) << "\n";
  if (rep.expansiveness.verdict == Verdict::zero_found) {
    std::cerr << "not expansive: f vanishes near (" << rep.expansiveness.zero_witness.first << ", "
              << rep.expansiveness.zero_witness.second << ")\n";
  }
  return verdict_exit(rep.expansiveness);
}

int cmd_count(const Common& c, std::int64_t max_index, std::optional<double> g_override,
              const std::string& format) {
  const auto f = parse_or_report(c.poly);
  if (!f) return kParse;
  const ExpansivenessCertificate cert = check_expansive(*f, c.max_depth);
  if (cert.verdict != Verdict::certified_expansive) {
    std::cerr << "polynomial is not certified expansive (" << to_string(cert.verdict) << ")\n";
    return verdict_exit(cert);
  }
  const GrowthReport growth = growth_rate(*f, c.search_bound, c.quad_nodes);
  if (!growth.certified) std::cerr << "warning: growth rate not certified\n";
  const double g = g_override.value_or(growth.g);
  CountCache cache(*f, c.exact_threshold);
  CountSeries series;
  try {
    series = mertens(cache, max_index, g, growth.A_witnesses, growth.B_witnesses, growth.tie_tolerance);
  } catch (const IntegrityError& e) {
    std::cerr << "integrity failure: " << e.what() << "\n";
    return kIntegrity;
  }
  if (format == "csv") {
    std::cout << series_to_csv(series);
    return kOk;
  }
  nlohmann::ordered_json j;
  j["polynomial"] = f->to_string();
  j["g"] = series.g;
  j["tie_tolerance"] = series.tie_tolerance;
  j["A"] = series.A;
  j["B"] = nlohmann::ordered_json::array();
  for (const auto& [b, cc] : series.B) j["B"].push_back({b, cc});
  j["rows"] = nlohmann::ordered_json::array();
  for (const CountRow& r : series.rows) {
    j["rows"].push_back({{"n", r.n},
                         {"a_n", r.a_n},
                         {"sum_F", r.sum_F.get_str()},
                         {"pi", r.pi.get_str()},
                         {"M", r.mertens},
                         {"M1", r.m1},
                         {"M2", r.m2},
                         {"N1", r.n1},
                         {"N2", r.n2},
                         {"N3", r.n3},
                         {"N4", r.n4}});
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_fullshift(int d_max, int digits) {
  for (int d = 2; d <= d_max; ++d) {
    const FullShiftConstant c = fullshift_constant(d);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, c.value);
    std::cout << d << "  " << c.closed_form() << " ≈ " << buf << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic orbit counts and growth rates for algebraic Z^2-actions"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Common analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "expansiveness, entropy and growth rate as JSON");
  add_common(analyze_cmd, analyze_opts);

  Common count_opts;
  std::int64_t max_index = 20;
  std::optional<double> g_override;
  std::string format = "csv";
  auto* count_cmd = app.add_subcommand("count", "per-index orbit counts and Mertens sums");
  add_common(count_cmd, count_opts);
  count_cmd->add_option("--max-index", max_index, "largest index n")
      ->capture_default_str()
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));
  count_cmd->add_option("--g", g_override, "growth rate override (default: computed)")
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--format", format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));

  int d_max = 8, digits = 13;
  auto* fullshift_cmd = app.add_subcommand("fullshift", "leading constants of M(N) for full Z^d-shifts");
  fullshift_cmd->add_option("--d-max", d_max)->capture_default_str()->check(CLI::Range(2, 12));
  fullshift_cmd->add_option("--digits", digits)->capture_default_str()->check(CLI::Range(1, 17));

  AcceptanceOptions acc;
  std::vector<int> only;
  auto* verify_cmd = app.add_subcommand("verify-examples", "run the acceptance criteria");
  verify_cmd->add_option("--quad-nodes", acc.quad_nodes)->capture_default_str()->check(CLI::Range(16, 1 << 16));
  verify_cmd->add_option("--search-bound", acc.search_bound)->capture_default_str()->check(CLI::Range(1, 4096));
  verify_cmd->add_option("--exact-threshold", acc.exact_threshold)->capture_default_str();
  verify_cmd->add_option("--criteria", only, "subset of criteria 1..10")->check(CLI::Range(1, 10));
  verify_cmd->add_option("--seed", acc.seed, "seed for sampled criteria")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_opts);
    if (*count_cmd) return cmd_count(count_opts, max_index, g_override, format);
    if (*fullshift_cmd) return cmd_fullshift(d_max, digits);
    if (*verify_cmd) {
      acc.only.insert(only.begin(), only.end());
      const auto results = run_acceptance(acc, std::cout);
      std::size_t passed = 0;
      for (const auto& r : results) passed += r.pass ? 1 : 0;
      std::cout << passed << "/" << results.size() << " criteria passed\n";
      return passed == results.size() ? 0 : 1;
    }
  } catch (const IntegrityError& e) {
    std::cerr << "integrity failure: " << e.what() << "\n";
    return kIntegrity;
  }
  return kOk;
}
