#pragma once

// Acceptance criteria runner shared by `elmono validate` and the
// acceptance_tests binary.

#include <functional>
#include <string>
#include <vector>

namespace elmono::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;  // measured values against their thresholds
  double seconds;
};

struct Options {
  // Quick mode shrinks the end-to-end grids (41x41 -> 21x21) and the sample
  // counts; thresholds are unchanged.
  bool quick = false;
  // Where criterion 9 writes its artifacts; empty uses the system temp dir.
  std::string scratch_dir;
  // Called after each criterion finishes, for streaming output.
  std::function<void(const CriterionResult&)> on_result;
};

constexpr int kCriterionCount = 9;

CriterionResult run_criterion(int id, const Options& options);
std::vector<CriterionResult> run_all(const Options& options);

// "[PASS] 3 forward solver (1.2 s): ..." on one line.
std::string format_result(const CriterionResult& r);

}  // namespace elmono::acceptance
