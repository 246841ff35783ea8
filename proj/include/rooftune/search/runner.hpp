#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rooftune/budget.hpp"
#include "rooftune/search/config.hpp"

namespace rooftune {

enum class Isolation { InProcess, Subprocess };

std::string_view to_string(Isolation i);
Isolation isolation_from_string(std::string_view s);

// Runs one invocation (the inner iteration loop) of a configuration.
class InvocationRunner {
 public:
  virtual ~InvocationRunner() = default;
  virtual EvalOutcome run(const KernelConfig& config, std::uint64_t invocation, const Budget& budget,
                          std::optional<double> best) = 0;
};

// Builds a fresh, prepared observation stream for one invocation. Any
// preparation (allocation, seeding, warm-up) happens here, untimed.
using SourceFactory =
    std::function<ObservationSource(const KernelConfig& config, std::uint64_t invocation)>;

// Factory for the built-in kernels. DGEMM uses `options.backend`; TRIAD
// uses the affinity policy; synthetic kernels look up `options.space`.
// Throws EnvironmentError when the backend is unavailable.
SourceFactory make_source_factory(const KernelOptions& options);

class InProcessRunner final : public InvocationRunner {
 public:
  explicit InProcessRunner(SourceFactory factory) : factory_(std::move(factory)) {}

  // Preparation failures become ExternallyAborted outcomes.
  EvalOutcome run(const KernelConfig& config, std::uint64_t invocation, const Budget& budget,
                  std::optional<double> best) override;

 private:
  SourceFactory factory_;
};

// Launches `command + worker_arguments(...)` per invocation, one at a time,
// exporting the affinity environment. A worker that crashes, exits non-zero,
// prints an unparsable line or outlives max_time + grace is recorded as
// ExternallyAborted.
class SubprocessRunner final : public InvocationRunner {
 public:
  SubprocessRunner(std::vector<std::string> command, KernelOptions options,
                   std::chrono::milliseconds grace = std::chrono::seconds(10));

  EvalOutcome run(const KernelConfig& config, std::uint64_t invocation, const Budget& budget,
                  std::optional<double> best) override;

 private:
  std::vector<std::string> command_;
  KernelOptions options_;
  std::chrono::milliseconds grace_;
};

// Convenience: one invocation with the chosen isolation. Subprocess mode
// re-executes the running binary's worker subcommand.
EvalOutcome run_invocation(const KernelConfig& config, std::uint64_t invocation, const Budget& budget,
                           std::optional<double> best, Isolation isolation,
                           const KernelOptions& options);

}  // namespace rooftune
