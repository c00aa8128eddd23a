#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rdl/io.hpp"

namespace rdl {

// Fast runs the sub-minute property checks; Full adds the large spectral and
// Monte Carlo experiments (n up to 2000).
enum class AcceptanceLevel { Fast, Full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool binding = true;  // non-binding criteria are reported but never gate
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceSummary {
  AcceptanceLevel level = AcceptanceLevel::Fast;
  std::vector<CriterionResult> results;

  // True when every binding criterion that ran passed.
  bool all_pass() const;
  Json to_json() const;
};

// Runs every criterion at or below `level`, streaming one [PASS]/[FAIL] line
// per criterion to `out` as it completes. Failures (including exceptions) are
// data, not aborts. Seeds are fixed per criterion, so the suite is
// deterministic.
AcceptanceSummary run_acceptance(AcceptanceLevel level, std::ostream& out);

}  // namespace rdl
