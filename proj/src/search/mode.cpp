#include "rooftune/search/mode.hpp"

#include <array>
#include <utility>

#include "rooftune/error.hpp"

namespace rooftune {

OptimizationMode parse_mode(std::string_view label, std::uint64_t hand_iterations) {
  OptimizationMode m;
  m.label = std::string(label);
  if (label == "default") return m;
  if (label == "single") {
    m.single = true;
    m.fixed_iterations = 1;
    m.fixed_invocations = 1;
    return m;
  }
  if (label == "hand-time" || label == "hand-acc") {
    if (hand_iterations < 1) throw InputError("hand-tuned modes need a positive iteration count");
    m.fixed_iterations = hand_iterations;
    m.fixed_invocations = 1;
    return m;
  }
  if (label.empty() || label.front() != 'c') {
    throw InputError("unknown mode '" + std::string(label) +
                     "' (expected default|single|hand-time|hand-acc|c|ci|cir|cio|cior)");
  }
  static constexpr std::array<std::string_view, 5> kStatistical{"c", "ci", "cir", "cio", "cior"};
  bool known = false;
  for (auto s : kStatistical) known = known || s == label;
  if (!known) {
    throw InputError("unknown mode '" + std::string(label) +
                     "' (expected default|single|hand-time|hand-acc|c|ci|cir|cio|cior)");
  }
  m.confidence = true;
  m.inner_prune = label.size() >= 2 && label[1] == 'i';
  m.outer_prune = label.find('o') != std::string_view::npos;
  m.reverse = label.back() == 'r';
  return m;
}

OptimizationMode with_reverse(OptimizationMode mode) {
  if (mode.reverse) return mode;
  mode.reverse = true;
  if (mode.label == "ci" || mode.label == "cio") {
    mode.label += "r";
  } else {
    mode.label += "-r";
  }
  return mode;
}

std::string technique_name(std::string_view label) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 9> kNames{{
      {"default", "Default"},
      {"single", "Single"},
      {"hand-time", "Hand-tuned Time"},
      {"hand-acc", "Hand-tuned Accuracy"},
      {"c", "Confidence"},
      {"ci", "C+Inner"},
      {"cir", "C+Inner+R"},
      {"cio", "C+I+Outer"},
      {"cior", "C+I+O+R"},
  }};
  for (const auto& [l, name] : kNames) {
    if (l == label) return std::string(name);
  }
  if (label.size() > 2 && label.substr(label.size() - 2) == "-r") {
    return technique_name(label.substr(0, label.size() - 2)) + "+R";
  }
  return std::string(label);
}

Budget effective_budget(const OptimizationMode& mode, const Budget& budget) {
  Budget b = budget;
  if (mode.fixed_iterations) {
    b.max_count = *mode.fixed_iterations;
    b.enable_ci_stop = false;
    b.enable_prune_stop = false;
    return b;
  }
  b.enable_ci_stop = budget.enable_ci_stop && mode.confidence;
  b.enable_prune_stop = budget.enable_prune_stop && mode.inner_prune;
  return b;
}

std::uint64_t effective_invocations(const OptimizationMode& mode, std::uint64_t invocations) {
  return mode.fixed_invocations.value_or(invocations);
}

}  // namespace rooftune
