#pragma once

#include <string>
#include <vector>

namespace modgamma {

// Outcome of one acceptance criterion.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // measured values behind the verdict
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 15;

// Named suites: "all", "quick" (skips the CF-inversion criteria), "clt", "limits", or a single id "1".."15".
std::vector<std::string> suite_names();
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite(const std::string& suite);

}  // namespace modgamma
