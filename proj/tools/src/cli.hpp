#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace scg::cli {

/// Entry point of the scg executable. Errors are reported on `err` as a
/// single JSON object {"error": {"code": ..., "message": ...}}.
/// Exit status: 0 success, 1 runtime or input error, 2 usage error,
/// 3 verification failure.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Violation {
  std::string file;
  std::size_t iteration = 0;
  double gap = 0.0;
  double regret_sum_scaled = 0.0;
};

struct VerifyReport {
  std::size_t files = 0;
  std::size_t rows = 0;
  std::size_t checked = 0;
  std::vector<Violation> violations;
};

/// Re-reads the per-run CSVs listed in a run's manifest and checks
/// -tol <= gap <= regret_sum_scaled + tol on every row with a gap.
VerifyReport verify_outputs(const std::filesystem::path& dir, double tol = 1e-9);

}  // namespace scg::cli
