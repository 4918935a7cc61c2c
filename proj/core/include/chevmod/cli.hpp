#pragma once

// Command-line front end: configuration, the suite registry, the JSON report
// and the `inspect` printer. The executable in tools/ only forwards to
// main_entry.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "chevmod/report.hpp"

namespace chevmod::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2, kBudget = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string type = "A1";
  unsigned q = 2;
  unsigned a = 1;
  unsigned b = 0;    // 0 means 2a
  unsigned ell = 0;  // 0 means the defining characteristic
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 1;
  std::string out;
  std::size_t budget = 1000;
  bool timing = false;
  std::size_t socle_samples = 20;
  std::size_t fixed_samples = 100;
};

struct SuiteInfo {
  std::string name;
  std::string anchor;
  bool needs_defining = false;  // l = p required
  bool needs_extension = false; // runs in the level-b context
};

const std::vector<SuiteInfo>& suite_registry();

struct SuitePart {
  std::string label;
  CheckReport report;
};

struct SuiteReport {
  std::string name;
  std::string anchor;
  /// "pass", "fail", "empty" (no non-vacuous case), "not-applicable" or "skipped".
  std::string status;
  std::string reason;
  CheckReport totals;
  std::vector<SuitePart> parts;
  double seconds = 0;
};

struct RunResult {
  int exit_code = kSuccess;
  std::vector<SuiteReport> suites;
  std::string json;     // the report document
  std::string summary;  // plain-text summary
};

/// Validates the configuration (throws UsageError) and fills the defaults.
RunConfig normalize(RunConfig config);

/// Runs the selected suites. Throws UsageError or BudgetExceeded.
RunResult run(const RunConfig& config);

std::string list_suites();

/// Objects: eta:J=.., D:J=.., fcl:J=.., frakf:K=.., YJ:J=.., WJ:J=.., EJ:J=..
std::string inspect(const RunConfig& config, const std::string& object);

/// Full command line handling; returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace chevmod::cli
