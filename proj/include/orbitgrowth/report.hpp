#pragma once

// JSON and CSV serialization of analysis results.

#include <optional>
#include <string>

#include <json.hpp>

#include "orbitgrowth/counting.hpp"
#include "orbitgrowth/laurent.hpp"
#include "orbitgrowth/measures.hpp"

namespace orbitgrowth {

inline constexpr const char* kToolVersion = "1.0.0";

struct AnalysisParameters {
  int quad_nodes = kDefaultQuadNodes;
  int search_bound = kDefaultSearchBound;
  std::int64_t exact_threshold = kDefaultExactThreshold;
  double tie_tolerance = kTieTolerance;
  int max_depth = kDefaultMaxDepth;

  friend bool operator==(const AnalysisParameters&, const AnalysisParameters&) = default;
};

struct AnalysisReport {
  std::string polynomial;
  ExpansivenessCertificate expansiveness;
  /// Absent unless the polynomial was certified expansive.
  std::optional<GrowthReport> growth;
  std::string tool_version = kToolVersion;
  AnalysisParameters parameters;
  /// Set when the growth rate could not be certified.
  std::optional<std::string> warning;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// parse -> check_expansive -> growth_rate.
AnalysisReport analyze(const LaurentPoly& f, const AnalysisParameters& params = {});

nlohmann::ordered_json to_json(const ExpansivenessCertificate& c);
nlohmann::ordered_json to_json(const GrowthReport& r);
nlohmann::ordered_json to_json(const AnalysisReport& r);

ExpansivenessCertificate certificate_from_json(const nlohmann::ordered_json& j);
GrowthReport growth_from_json(const nlohmann::ordered_json& j);
AnalysisReport report_from_json(const nlohmann::ordered_json& j);

/// Header n,a_n,sum_F,pi,M,M1,M2,N1,N2,N3,N4 and one row per index.
std::string series_to_csv(const CountSeries& s);

/// %.15g formatting.
std::string format_real(double x);

}  // namespace orbitgrowth
