#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"

namespace hcrystal::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kPoleOnly = 3,
  kResourceCap = 4,
};

/// A named CSV table; cells are already formatted.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits; NaN as "nan".
std::string format_double(double v);

const std::vector<std::string>& command_names();

/// kPoleOnly when a symmetrized sweep has no finite fermion point, else kSuccess.
int sweep_exit_code(const std::vector<bool>& fermion_poles, bool symmetrized);

struct RunOutcome {
  int exit_code = kSuccess;
  std::vector<std::filesystem::path> files;
  std::vector<Table> tables;
};

/// Runs one subcommand. With an output directory every table becomes
/// `<name>.csv` plus a `<name>.json` sidecar; otherwise tables go to `out`.
/// Errors are reported on `err` and mapped to exit codes rather than thrown.
RunOutcome run(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hcrystal::cli
