#pragma once

#include <optional>
#include <string>
#include <vector>

namespace betamatch {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool gated = true;  // false: reported, not counted toward pass/fail
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  int jobs = 1;
  std::optional<int> only;  // run a single criterion
};

/// The built-in reproduction suite: one result per criterion.
std::vector<CriterionResult> run_verification(const VerifyOptions& opt = {});

bool all_gated_passed(const std::vector<CriterionResult>& results);

/// Prints the pass/fail table to the given stream-like sink.
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace betamatch
