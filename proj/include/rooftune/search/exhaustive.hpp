#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rooftune/budget.hpp"
#include "rooftune/search/config.hpp"
#include "rooftune/search/mode.hpp"
#include "rooftune/search/runner.hpp"
#include "rooftune/search/space.hpp"

namespace rooftune {

// How a configuration's invocations reduce to one score.
enum class ScoreKind { BestInvocationMean, MeanOfInvocations };

std::string_view to_string(ScoreKind s);
ScoreKind score_kind_from_string(std::string_view s);

inline constexpr double kFailedScore = -std::numeric_limits<double>::infinity();

struct ConfigResult {
  KernelConfig config;
  std::vector<EvalOutcome> per_invocation;
  OnlineStats aggregate;  // over invocation means
  double best_invocation_mean = kFailedScore;
  double score = kFailedScore;
  double total_elapsed_s = 0.0;
  bool failed = false;
  bool outer_pruned = false;
  std::string error;

  [[nodiscard]] std::uint64_t observations() const;
};

struct TuningResult {
  std::optional<KernelConfig> best_config;
  double best_value = kFailedScore;
  std::vector<ConfigResult> results;
  double total_wall_time_s = 0.0;
  double total_observation_time_s = 0.0;
  std::uint64_t total_observations = 0;
  std::string mode;
};

struct SearchSettings {
  OptimizationMode mode;
  Budget budget;
  std::uint64_t invocations = 10;
  ScoreKind score = ScoreKind::BestInvocationMean;
  // Called after each configuration finishes, in visiting order.
  std::function<void(const ConfigResult&)> on_result;
};

// Visits every configuration (reversed when mode.reverse), running up to
// `invocations` invocations of the budgeted inner loop on each. The
// incumbent is the best score so far; inner pruning hands it to the inner
// loop, outer pruning drops remaining invocations once the CI over
// invocation means lies below it. Failed configurations score -inf and the
// sweep continues. Ties keep the first-visited configuration.
TuningResult exhaustive_search(const SearchSpace& space, KernelKind kind,
                               const SearchSettings& settings, InvocationRunner& runner);

}  // namespace rooftune
