#pragma once

// The ten acceptance criteria, shared by the acceptance test binary and the
// `verify-examples` subcommand.

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "orbitgrowth/counting.hpp"
#include "orbitgrowth/measures.hpp"

namespace orbitgrowth {

struct AcceptanceOptions {
  int quad_nodes = kDefaultQuadNodes;
  int search_bound = kDefaultSearchBound;
  std::int64_t exact_threshold = kDefaultExactThreshold;
  /// Empty runs all criteria.
  std::set<int> only;
  std::uint64_t seed = 0x5eed;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
  std::string expected;
  std::string tolerance;
  double seconds = 0.0;
  double time_limit = 0.0;
};

std::string format_line(const CriterionResult& r);

/// Runs the selected criteria, printing each line to `out` as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& out);

}  // namespace orbitgrowth
