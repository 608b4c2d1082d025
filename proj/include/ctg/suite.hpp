#pragma once

#include "ctg/interp.hpp"

#include <string>
#include <vector>

namespace ctg {

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;  // counts on success, first failure otherwise
  double millis = 0;
};

struct SuiteOptions {
  std::vector<std::string> only;  // criterion ids; empty runs all
  InterpConfig cfg;
};

const std::vector<std::pair<std::string, std::string>>& criterion_ids();  // (id, title)
// Comma-separated ids; throws std::invalid_argument on an unknown id.
std::vector<std::string> parse_filter(const std::string& filter);
std::vector<CriterionResult> run_suite(const SuiteOptions& opts);
// "id status millis" lines followed by "summary pass P fail F millis M".
std::string suite_summary(const std::vector<CriterionResult>& rs);

}  // namespace ctg
