#pragma once

// The numbered acceptance checks, runnable from the CLI (`selftest`) and
// from the test suite.

#include <string>
#include <vector>

namespace resdecay {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
  double budget_seconds;
};

inline constexpr int kEngineCriteria = 8;

/// id in [1, kEngineCriteria]. `threads` drives the threaded determinism
/// check. A check that throws is reported as failed with the error text.
CriterionResult run_criterion(int id, unsigned threads = 4);

std::vector<CriterionResult> run_engine_criteria(unsigned threads = 4);

/// "criterion 3 PASS closed-form kernel (0.41 s / 10 s): ..."
std::string summary_line(const CriterionResult& r);

}  // namespace resdecay
