#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace rooftune {

struct ProcessResult {
  int exit_code = -1;  // valid when neither signaled nor timed out
  int term_signal = 0;
  bool timed_out = false;
  std::string out;
  std::string err;

  [[nodiscard]] bool ok() const { return !timed_out && term_signal == 0 && exit_code == 0; }
};

// Runs argv[0] (PATH lookup) in its own process group with extra
// environment variables, capturing stdout and stderr. The whole group is
// killed with SIGKILL once `timeout` elapses. Throws EnvironmentError if the
// process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::vector<std::pair<std::string, std::string>>& env,
                          std::chrono::milliseconds timeout);

// Absolute path of the running executable (/proc/self/exe).
std::string current_executable_path();

}  // namespace rooftune
