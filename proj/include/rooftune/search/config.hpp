#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "rooftune/kernels/affinity.hpp"
#include "rooftune/kernels/dgemm.hpp"
#include "rooftune/kernels/synthetic.hpp"
#include "rooftune/kernels/triad.hpp"
#include "rooftune/search/space.hpp"

namespace rooftune {

enum class KernelKind { Dgemm, Triad, Synthetic };

std::string_view to_string(KernelKind k);
KernelKind kernel_kind_from_string(std::string_view s);

// Unit of the metric the kernel reports as its score.
std::string_view metric_unit(KernelKind k);

// A point of a search space bound to the kernel that interprets it.
struct KernelConfig {
  KernelKind kind = KernelKind::Synthetic;
  Point point;

  [[nodiscard]] std::string label() const { return point.label(); }
  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
};

// Per-sweep settings a runner needs to turn a KernelConfig into a kernel.
struct KernelOptions {
  std::string space;  // names the synthetic suite for synthetic kernels
  std::string backend = "auto";
  AffinityPolicy affinity;
  std::uint64_t seed = 1;
  double triad_gamma = 3.0;

  friend bool operator==(const KernelOptions&, const KernelOptions&) = default;
};

DgemmConfig to_dgemm_config(const Point& p);
TriadConfig to_triad_config(const Point& p, double gamma = 3.0);

// Named synthetic benchmark landscapes for exercising the tuner without
// hardware. Each maps a point of its space to an observation model.
struct SyntheticSuite {
  SearchSpace space;
  std::function<SyntheticConfig(const Point&)> model;
};

// "demo5": five configurations with means 10..50 and sd 0.5.
// "demo96": the reduced DGEMM grid with one configuration 5% above the
// runner-up and per-observation sd of 1% of each mean.
// "const5": demo5's means with zero noise.
// Returns nullopt for unknown names.
std::optional<SyntheticSuite> find_synthetic_suite(std::string_view name);

// The demo96 landscape's winner and runner-up, for tests.
inline constexpr std::size_t kDemo96TopIndex = 70;
inline constexpr std::size_t kDemo96RunnerUpIndex = 21;

}  // namespace rooftune
