#pragma once

#include <ostream>

#include "philap/cli/config.hpp"

namespace philap::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitInfeasible = 2,
  kExitBracket = 3,
  kExitConvergence = 4,
  kExitMonotone = 5,
};

int cmd_period(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_shoot(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sine(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate_csv(const std::string& path, std::ostream& out, std::ostream& err);

/// Full command line: subcommand, `--config FILE`, key flags. Library errors
/// are mapped to the exit codes above and reported on err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace philap::cli
