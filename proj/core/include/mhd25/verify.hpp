#pragma once

#include <string>
#include <vector>

namespace mhd25 {

struct CriterionResult {
  std::string id;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CriterionResult> results;
  bool all_passed() const;
};

// Runs the acceptance criteria. The quick level covers the fast oracle and
// structural checks (A1, A4, A5, P1, P2); full adds the long runs (A2, A3,
// A6, A7), reusing one large decay run for A2 and A6. Scratch artifacts
// (run directories, CSVs, summaries) land under scratch_dir. Tolerances are
// pinned here, in code.
VerifyReport verify_suite(bool full, const std::string& scratch_dir);

// One line per criterion: "<id> PASS|FAIL|SKIP  <detail>".
std::string format_verify_report(const VerifyReport& report);

}  // namespace mhd25
