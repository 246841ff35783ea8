#include "rooftune/budget.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <utility>

#include "rooftune/error.hpp"

namespace rooftune {

void validate(const Budget& b) {
  if (!(b.max_time_s > 0.0) || !std::isfinite(b.max_time_s)) {
    throw InputError("budget: max_time must be positive and finite");
  }
  if (b.max_count < 1) throw InputError("budget: max_count must be at least 1");
  if (!(b.ci_level > 0.0 && b.ci_level < 1.0)) {
    throw InputError("budget: ci_level must lie in (0, 1)");
  }
  if (!(b.ci_rel_tol > 0.0) || !std::isfinite(b.ci_rel_tol)) {
    throw InputError("budget: ci_rel_tol must be positive");
  }
  if (b.min_count < 2) throw InputError("budget: min_count must be at least 2");
}

namespace {
constexpr std::array<std::pair<StopReason, std::string_view>, 5> kReasonNames{{
    {StopReason::MaxTime, "MaxTime"},
    {StopReason::MaxCount, "MaxCount"},
    {StopReason::CiConverged, "CiConverged"},
    {StopReason::PrunedByBest, "PrunedByBest"},
    {StopReason::ExternallyAborted, "ExternallyAborted"},
}};
}  // namespace

std::string_view to_string(StopReason r) {
  for (const auto& [reason, name] : kReasonNames) {
    if (reason == r) return name;
  }
  return "Unknown";
}

StopReason stop_reason_from_string(std::string_view name) {
  for (const auto& [reason, n] : kReasonNames) {
    if (n == name) return reason;
  }
  throw InputError("unknown stop reason: " + std::string(name));
}

std::optional<StopReason> should_stop(const OnlineStats& stats, double elapsed_s,
                                      const Budget& budget, std::optional<double> best) {
  if (elapsed_s >= budget.max_time_s) return StopReason::MaxTime;
  if (stats.count() >= budget.max_count) return StopReason::MaxCount;
  if (stats.count() < 2) return std::nullopt;

  const bool want_prune = budget.enable_prune_stop && best.has_value() &&
                          stats.count() >= budget.min_count;
  if (!budget.enable_ci_stop && !want_prune) return std::nullopt;

  const ConfidenceInterval ci = confidence_interval(stats, budget.ci_level);
  if (budget.enable_ci_stop && ci.half_width <= budget.ci_rel_tol * std::abs(ci.mean)) {
    return StopReason::CiConverged;
  }
  if (want_prune && ci.mean + ci.half_width < *best) return StopReason::PrunedByBest;
  return std::nullopt;
}

EvalOutcome evaluate(const ObservationSource& source, const Budget& budget,
                     std::optional<double> best) {
  validate(budget);
  EvalOutcome out;
  for (;;) {
    Measurement m;
    try {
      m = source();
      out.stats.update(m.value);
    } catch (const std::exception& e) {
      out.stop_reason = StopReason::ExternallyAborted;
      out.error = e.what();
      return out;
    }
    out.elapsed_s += m.elapsed_s;
    if (auto reason = should_stop(out.stats, out.elapsed_s, budget, best)) {
      out.stop_reason = *reason;
      return out;
    }
  }
}

}  // namespace rooftune
