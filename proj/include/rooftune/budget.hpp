#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "rooftune/kernels/measurement.hpp"
#include "rooftune/stats.hpp"

namespace rooftune {

// Stop-condition thresholds for one invocation's iteration loop.
// Defaults follow the tuner configuration used for the reference runs:
// 10 s, 200 iterations, 99% interval within ±1% of the mean.
struct Budget {
  double max_time_s = 10.0;
  std::uint64_t max_count = 200;
  double ci_level = 0.99;
  double ci_rel_tol = 0.01;
  std::uint64_t min_count = 2;
  bool enable_ci_stop = true;
  bool enable_prune_stop = true;

  friend bool operator==(const Budget&, const Budget&) = default;
};

// Throws InputError when the budget violates its invariants.
void validate(const Budget& budget);

enum class StopReason { MaxTime, MaxCount, CiConverged, PrunedByBest, ExternallyAborted };

std::string_view to_string(StopReason r);
// Throws InputError for unknown names.
StopReason stop_reason_from_string(std::string_view name);

struct EvalOutcome {
  OnlineStats stats;
  StopReason stop_reason = StopReason::ExternallyAborted;
  double elapsed_s = 0.0;
  // Set only for ExternallyAborted outcomes.
  std::string error;

  [[nodiscard]] std::uint64_t observations_used() const { return stats.count(); }

  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;
};

// Checks the four stop conditions in fixed precedence order:
// MaxTime, MaxCount, CiConverged, PrunedByBest. `best` is the incumbent's
// score (higher is better). Returns nullopt when sampling should continue.
std::optional<StopReason> should_stop(const OnlineStats& stats, double elapsed_s,
                                      const Budget& budget, std::optional<double> best);

// Produces one observation. Throwing aborts the evaluation.
using ObservationSource = std::function<Measurement()>;

// Inner iteration loop: draws observations until a stop condition fires.
// Elapsed time is the sum of the observations' own durations.
EvalOutcome evaluate(const ObservationSource& source, const Budget& budget,
                     std::optional<double> best);

}  // namespace rooftune
