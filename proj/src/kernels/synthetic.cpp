#include "rooftune/kernels/synthetic.hpp"

#include <cmath>
#include <utility>

#include "rooftune/error.hpp"

namespace rooftune {

void validate(const SyntheticConfig& cfg) {
  const auto& d = cfg.distribution;
  if (!std::isfinite(d.location) || !std::isfinite(d.scale) || d.scale < 0.0) {
    throw InputError("synthetic '" + cfg.id + "': scale must be finite and non-negative");
  }
  if (!(cfg.per_obs_duration_s > 0.0) || !std::isfinite(cfg.per_obs_duration_s)) {
    throw InputError("synthetic '" + cfg.id + "': per-observation duration must be positive");
  }
  if (cfg.drift && !(cfg.drift->depth >= 0.0 && cfg.drift->depth < 1.0)) {
    throw InputError("synthetic '" + cfg.id + "': drift depth must lie in [0, 1)");
  }
}

SyntheticSource::SyntheticSource(SyntheticConfig cfg, std::uint64_t seed, std::uint64_t invocation)
    : cfg_(std::move(cfg)), rng_(derive_seed(seed, fnv1a64(cfg_.id), invocation)) {
  validate(cfg_);
  if (cfg_.distribution.scale > 0.0) {
    normal_ = std::normal_distribution<double>(cfg_.distribution.location, cfg_.distribution.scale);
  }
}

Measurement SyntheticSource::next() {
  const auto& d = cfg_.distribution;
  double value = d.location;
  if (d.scale > 0.0) value = normal_(rng_);
  if (d.kind == DistributionKind::LogNormal) value = std::exp(value);

  if (cfg_.drift && cfg_.drift->length > 0 && index_ < cfg_.drift->length) {
    const double progress = static_cast<double>(index_) / static_cast<double>(cfg_.drift->length);
    value *= 1.0 - cfg_.drift->depth * (1.0 - progress);
  }
  ++index_;

  Measurement m;
  m.value = value;
  m.gflops = value;
  m.elapsed_s = cfg_.per_obs_duration_s;
  return m;
}

}  // namespace rooftune
