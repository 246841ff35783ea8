#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "rooftune/kernels/measurement.hpp"
#include "rooftune/rng.hpp"

namespace rooftune {

enum class DistributionKind { Normal, LogNormal };

// For Normal, location/scale are mean and standard deviation. For
// LogNormal they are the mean and standard deviation of log(value).
// A zero scale gives a constant stream.
struct Distribution {
  DistributionKind kind = DistributionKind::Normal;
  double location = 0.0;
  double scale = 0.0;
};

// Performance ramps linearly from (1 - depth) of nominal at the first
// observation up to nominal after `length` observations.
struct DriftRamp {
  double depth = 0.0;
  std::uint64_t length = 0;
};

struct SyntheticConfig {
  std::string id;
  Distribution distribution;
  double per_obs_duration_s = 1e-3;
  std::optional<DriftRamp> drift;
};

// Throws InputError for negative scale, non-positive duration or a drift
// depth outside [0, 1).
void validate(const SyntheticConfig& cfg);

// Seeded observation stream for one synthetic configuration. The stream is
// a pure function of (seed, id, invocation).
class SyntheticSource {
 public:
  SyntheticSource(SyntheticConfig cfg, std::uint64_t seed, std::uint64_t invocation = 0);

  Measurement next();

  [[nodiscard]] const SyntheticConfig& config() const { return cfg_; }
  [[nodiscard]] std::uint64_t drawn() const { return index_; }

 private:
  SyntheticConfig cfg_;
  SplitMix64 rng_;
  std::normal_distribution<double> normal_;
  std::uint64_t index_ = 0;
};

}  // namespace rooftune
