#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  int workers = 8;
  /// Directory receiving conjecture_scan.csv; empty skips the archive.
  std::string archive_dir = ".";
  /// Criteria to run; empty runs 1 through 12.
  std::vector<int> only;
};

/// Runs the property and oracle checks numbered 1 to 12. A criterion passes
/// only if its checks hold and it finishes within its time limit.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS  3 gauss closed form ... (1.23 s / 30 s) detail".
std::string format_result(const CriterionResult& r);

}  // namespace hl
