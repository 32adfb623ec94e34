#pragma once

// The report document: every computed invariant of one fixture.

#include <string>

#include <json.hpp>

#include "torushom/fixture.hpp"

namespace torushom {

// Deterministic for a fixed fixture; sections that need the unimodularity
// condition are replaced by a "star" failure entry when it does not hold.
nlohmann::json report_json(const Model& m, const Coefficients& coeffs);
// Aligned plain-text rendering of report_json.
std::string report_text(const nlohmann::json& report);

// Quick pass/fail verdict: the consistency checks plus Novik-Swartz in every degree.
struct CheckResult {
  std::vector<std::string> passed;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
CheckResult check_fixture(const Model& m, const Coefficients& coeffs);

}  // namespace torushom
