#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ffdep {

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  /// Artifacts go here (created if missing).
  std::filesystem::path out_dir = "acceptance_out";
  /// Golden files for the height profiles.
  std::filesystem::path golden_dir;
  /// Write missing golden files instead of failing on them.
  bool freeze_golden = false;
  /// Criteria to run, 1..10; empty means all.
  std::vector<int> criteria;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;
  double seconds = 0.0;
};

struct AcceptanceResult {
  std::vector<CriterionResult> results;
  bool all_pass() const;
  std::vector<int> failed() const;
};

/// Runs the selected criteria, writing one JSON artifact per criterion plus
/// summary.json into out_dir. Criterion 10 reruns criteria 1..9 from the
/// selection into out_dir/rerun and compares the artifacts byte for byte.
/// Progress goes to `log`.
AcceptanceResult run_acceptance(const AcceptanceOptions& options, std::ostream& log);

/// "PASS  C3  structure checks: ... (12.3 s)".
std::string format_result_line(const CriterionResult& r);

}  // namespace ffdep
