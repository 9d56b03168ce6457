#include "orbitgrowth/report.hpp"

#include <cstdio>
#include <sstream>

namespace orbitgrowth {

using nlohmann::ordered_json;

AnalysisReport analyze(const LaurentPoly& f, const AnalysisParameters& params) {
  AnalysisReport rep;
  rep.polynomial = f.to_string();
  rep.parameters = params;
  rep.expansiveness = check_expansive(f, params.max_depth);
  if (rep.expansiveness.verdict != Verdict::certified_expansive) return rep;
  rep.growth = growth_rate(f, params.search_bound, params.quad_nodes, params.tie_tolerance);
  if (!rep.growth->certified) rep.warning = "growth_rate_not_certified";
  return rep;
}

ordered_json to_json(const ExpansivenessCertificate& c) {
  return {{"verdict", to_string(c.verdict)},
          {"min_modulus_lower_bound", c.min_modulus_lower_bound},
          {"zero_witness", {c.zero_witness.first, c.zero_witness.second}},
          {"max_depth_reached", c.max_depth_reached},
          {"squares_examined", c.squares_examined}};
}

ordered_json to_json(const GrowthReport& r) {
  ordered_json B = ordered_json::array();
  for (const auto& [b, c] : r.B_witnesses) B.push_back({b, c});
  return {{"h", r.h},
          {"g", r.g},
          {"dichotomy", to_string(r.dichotomy)},
          {"A_witnesses", r.A_witnesses},
          {"B_witnesses", B},
          {"lambda", r.lambda},
          {"search_bound", r.search_bound},
          {"quad_nodes", r.quad_nodes},
          {"certified", r.certified},
          {"tie_tolerance", r.tie_tolerance},
          {"g_check", r.g_check},
          {"best_line", {r.best_line.first, r.best_line.second}},
          {"lines_evaluated", r.lines_evaluated}};
}

ordered_json to_json(const AnalysisReport& r) {
  ordered_json j;
  j["polynomial"] = r.polynomial;
  j["expansiveness"] = to_json(r.expansiveness);
  j["growth"] = r.growth ? to_json(*r.growth) : ordered_json(nullptr);
  j["tool_version"] = r.tool_version;
  j["parameters"] = {{"quad_nodes", r.parameters.quad_nodes},
                     {"search_bound", r.parameters.search_bound},
                     {"exact_threshold", r.parameters.exact_threshold},
                     {"tie_tolerance", r.parameters.tie_tolerance},
                     {"max_depth", r.parameters.max_depth}};
  if (r.warning) j["warning"] = *r.warning;
  return j;
}

ExpansivenessCertificate certificate_from_json(const ordered_json& j) {
  ExpansivenessCertificate c;
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.min_modulus_lower_bound = j.at("min_modulus_lower_bound").get<double>();
  c.zero_witness = {j.at("zero_witness").at(0).get<double>(), j.at("zero_witness").at(1).get<double>()};
  c.max_depth_reached = j.at("max_depth_reached").get<int>();
  c.squares_examined = j.at("squares_examined").get<std::size_t>();
  return c;
}

GrowthReport growth_from_json(const ordered_json& j) {
  GrowthReport r;
  r.h = j.at("h").get<double>();
  r.g = j.at("g").get<double>();
  r.dichotomy = dichotomy_from_string(j.at("dichotomy").get<std::string>());
  r.A_witnesses = j.at("A_witnesses").get<std::vector<std::int64_t>>();
  for (const auto& w : j.at("B_witnesses")) r.B_witnesses.emplace_back(w.at(0).get<std::int64_t>(), w.at(1).get<std::int64_t>());
  r.lambda = j.at("lambda").get<double>();
  r.search_bound = j.at("search_bound").get<int>();
  r.quad_nodes = j.at("quad_nodes").get<int>();
  r.certified = j.at("certified").get<bool>();
  r.tie_tolerance = j.at("tie_tolerance").get<double>();
  r.g_check = j.at("g_check").get<double>();
  r.best_line = {j.at("best_line").at(0).get<std::int64_t>(), j.at("best_line").at(1).get<std::int64_t>()};
  r.lines_evaluated = j.at("lines_evaluated").get<std::size_t>();
  return r;
}

AnalysisReport report_from_json(const ordered_json& j) {
  AnalysisReport r;
  r.polynomial = j.at("polynomial").get<std::string>();
  r.expansiveness = certificate_from_json(j.at("expansiveness"));
  if (!j.at("growth").is_null()) r.growth = growth_from_json(j.at("growth"));
  r.tool_version = j.at("tool_version").get<std::string>();
  const auto& p = j.at("parameters");
  r.parameters.quad_nodes = p.at("quad_nodes").get<int>();
  r.parameters.search_bound = p.at("search_bound").get<int>();
  r.parameters.exact_threshold = p.at("exact_threshold").get<std::int64_t>();
  r.parameters.tie_tolerance = p.at("tie_tolerance").get<double>();
  r.parameters.max_depth = p.at("max_depth").get<int>();
  if (j.contains("warning")) r.warning = j.at("warning").get<std::string>();
  return r;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string series_to_csv(const CountSeries& s) {
  std::ostringstream os;
  os << "n,a_n,sum_F,pi,M,M1,M2,N1,N2,N3,N4\n";
  for (const CountRow& r : s.rows) {
    os << r.n << ',' << r.a_n << ',' << r.sum_F << ',' << r.pi << ',' << format_real(r.mertens) << ','
       << format_real(r.m1) << ',' << format_real(r.m2) << ',' << format_real(r.n1) << ','
       << format_real(r.n2) << ',' << format_real(r.n3) << ',' << format_real(r.n4) << '\n';
  }
  return os.str();
}

}  // namespace orbitgrowth
