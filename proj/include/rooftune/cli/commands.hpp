#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rooftune/roofline/roofline.hpp"

namespace rooftune::cli {

// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitEnvironment = 3,
  kExitKernel = 4,
};

struct CliContext {
  // Command that starts this tool; subprocess isolation appends the worker
  // arguments to it. Empty means the running executable.
  std::vector<std::string> self_command;
};

// Entry point for `rooftune <subcommand> ...`; `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliContext& context = {});

// "DGEMM S2: 408.71 of 422.4 GFLOP/s = 96.76%"
std::string format_utilization(const std::string& label, double measured, double theoretical,
                               const std::string& unit);

// Theoretical compute and DRAM peaks for every socket count, one per line.
std::string format_theoretical_peaks(const HardwareSpec& spec);

}  // namespace rooftune::cli
