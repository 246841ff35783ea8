#include "rooftune/search/exhaustive.hpp"

#include <algorithm>
#include <chrono>

#include "rooftune/error.hpp"

namespace rooftune {

std::string_view to_string(ScoreKind s) {
  return s == ScoreKind::BestInvocationMean ? "best" : "mean";
}

ScoreKind score_kind_from_string(std::string_view s) {
  if (s == "best") return ScoreKind::BestInvocationMean;
  if (s == "mean") return ScoreKind::MeanOfInvocations;
  throw InputError("unknown score kind '" + std::string(s) + "' (expected best|mean)");
}

std::uint64_t ConfigResult::observations() const {
  std::uint64_t n = 0;
  for (const auto& o : per_invocation) n += o.observations_used();
  return n;
}

namespace {

bool outer_prune_fires(const OnlineStats& aggregate, const Budget& budget, std::optional<double> incumbent) {
  if (!incumbent || aggregate.count() < 2) return false;
  const ConfidenceInterval ci = confidence_interval(aggregate, budget.ci_level);
  return ci.upper() < *incumbent;
}

}  // namespace

TuningResult exhaustive_search(const SearchSpace& space, KernelKind kind,
                               const SearchSettings& settings, InvocationRunner& runner) {
  SearchSpace ordered = space;
  if (settings.mode.reverse) {
    ordered.set_order(space.order() == SearchOrder::Forward ? SearchOrder::Reverse : SearchOrder::Forward);
  }
  const std::vector<Point> points = ordered.enumerate();
  if (points.empty()) throw InputError("search space '" + space.name() + "' is empty");

  const Budget budget = effective_budget(settings.mode, settings.budget);
  validate(budget);
  const std::uint64_t invocations = effective_invocations(settings.mode, settings.invocations);
  if (invocations < 1) throw InputError("at least one invocation is required");
  const bool outer_prune = settings.mode.outer_prune && settings.budget.enable_prune_stop &&
                           !settings.mode.fixed_iterations;

  const auto wall_start = std::chrono::steady_clock::now();
  TuningResult result;
  result.mode = settings.mode.label;
  result.results.reserve(points.size());
  std::optional<double> incumbent;

  for (const Point& point : points) {
    ConfigResult cr;
    cr.config = {kind, point};
    for (std::uint64_t inv = 0; inv < invocations; ++inv) {
      const std::optional<double> best = budget.enable_prune_stop ? incumbent : std::nullopt;
      EvalOutcome outcome = runner.run(cr.config, inv, budget, best);
      cr.total_elapsed_s += outcome.elapsed_s;
      const bool aborted = outcome.stop_reason == StopReason::ExternallyAborted;
      if (aborted) {
        cr.failed = true;
        cr.error = outcome.error;
      } else {
        cr.aggregate.update(outcome.stats.mean());
        cr.best_invocation_mean = std::max(cr.best_invocation_mean, outcome.stats.mean());
      }
      cr.per_invocation.push_back(std::move(outcome));
      if (aborted) break;
      if (outer_prune && outer_prune_fires(cr.aggregate, budget, incumbent)) {
        cr.outer_pruned = true;
        break;
      }
    }

    if (!cr.failed) {
      cr.score = settings.score == ScoreKind::BestInvocationMean ? cr.best_invocation_mean
                                                                  : cr.aggregate.mean();
      if (!incumbent || cr.score > *incumbent) {
        incumbent = cr.score;
        result.best_config = cr.config;
        result.best_value = cr.score;
      }
    }
    result.total_observations += cr.observations();
    result.total_observation_time_s += cr.total_elapsed_s;
    if (settings.on_result) settings.on_result(cr);
    result.results.push_back(std::move(cr));
  }

  result.total_wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

}  // namespace rooftune
