#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tenrank {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  /// Counts and the first failure, if any.
  std::string detail;
  /// Non-assertive observations (probe output).
  std::vector<std::string> log;
  double seconds = 0;
};

/// The ten acceptance criteria; `only` selects a subset by id (empty = all).
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

/// "[PASS] 3 title (detail, 0.12s)"
std::string format_result(const CriterionResult& r);

}  // namespace tenrank
