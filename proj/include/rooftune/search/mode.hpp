#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rooftune/budget.hpp"

namespace rooftune {

// Which evaluation optimizations a sweep applies.
//   confidence   stop an invocation once its CI is within tolerance
//   inner_prune  stop an invocation whose CI upper bound is below the incumbent
//   outer_prune  skip remaining invocations once the CI over invocation
//                means falls below the incumbent
//   reverse      enumerate the space back to front
//   single       one invocation of one iteration
// fixed_* pin the loop counts and disable the statistical stops.
struct OptimizationMode {
  std::string label = "default";
  bool confidence = false;
  bool inner_prune = false;
  bool outer_prune = false;
  bool reverse = false;
  bool single = false;
  std::optional<std::uint64_t> fixed_iterations;
  std::optional<std::uint64_t> fixed_invocations;

  friend bool operator==(const OptimizationMode&, const OptimizationMode&) = default;
};

// default, single, hand-time, hand-acc, c, ci, cir, cio, cior.
// Hand-tuned modes run one invocation of `hand_iterations` iterations.
// Throws InputError for unknown labels.
OptimizationMode parse_mode(std::string_view label, std::uint64_t hand_iterations = 200);

// Returns `mode` with reverse set and the label suffixed with "r".
OptimizationMode with_reverse(OptimizationMode mode);

// Display name used in comparison tables ("C+I+Outer", "Hand-tuned Time", ...).
std::string technique_name(std::string_view label);

// Budget the inner loop actually runs under for this mode.
Budget effective_budget(const OptimizationMode& mode, const Budget& budget);
std::uint64_t effective_invocations(const OptimizationMode& mode, std::uint64_t invocations);

}  // namespace rooftune
