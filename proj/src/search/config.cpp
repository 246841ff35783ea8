#include "rooftune/search/config.hpp"

#include <algorithm>

#include "rooftune/error.hpp"

namespace rooftune {

std::string_view to_string(KernelKind k) {
  switch (k) {
    case KernelKind::Dgemm: return "dgemm";
    case KernelKind::Triad: return "triad";
    case KernelKind::Synthetic: return "synthetic";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view s) {
  if (s == "dgemm") return KernelKind::Dgemm;
  if (s == "triad") return KernelKind::Triad;
  if (s == "synthetic") return KernelKind::Synthetic;
  throw InputError("unknown kernel '" + std::string(s) + "' (expected dgemm|triad|synthetic)");
}

std::string_view metric_unit(KernelKind k) {
  return k == KernelKind::Triad ? "GB/s" : "GFLOP/s";
}

DgemmConfig to_dgemm_config(const Point& p) {
  DgemmConfig cfg;
  cfg.n = p.at("n");
  cfg.m = p.at("m");
  cfg.k = p.at("k");
  return cfg;
}

TriadConfig to_triad_config(const Point& p, double gamma) {
  const std::int64_t len = p.at("length");
  if (len <= 0) throw InputError("TRIAD length must be positive");
  return {static_cast<std::size_t>(len), gamma};
}

namespace {

std::size_t axis_position(const Axis& axis, std::int64_t value) {
  const auto it = std::find(axis.values.begin(), axis.values.end(), value);
  if (it == axis.values.end()) {
    throw InputError("value " + std::to_string(value) + " is not on axis '" + axis.name + "'");
  }
  return static_cast<std::size_t>(it - axis.values.begin());
}

// Row-major index of a point within an unconstrained space.
std::size_t flat_index(const SearchSpace& space, const Point& p) {
  std::size_t idx = 0;
  for (const auto& axis : space.axes()) idx = idx * axis.values.size() + axis_position(axis, p.at(axis.name));
  return idx;
}

SyntheticSuite demo5() {
  SyntheticSuite suite{SearchSpace("demo5", {{"id", {0, 1, 2, 3, 4}}}), {}};
  suite.model = [](const Point& p) {
    const std::int64_t id = p.at("id");
    if (id < 0 || id > 4) throw InputError("demo5 has ids 0..4");
    SyntheticConfig cfg;
    cfg.id = "demo5/" + p.label();
    cfg.distribution = {DistributionKind::Normal, 10.0 * static_cast<double>(id + 1), 0.5};
    cfg.per_obs_duration_s = 1e-3;
    return cfg;
  };
  return suite;
}

// Same means as demo5 with no noise: every observation equals the mean.
SyntheticSuite const5() {
  SyntheticSuite suite{SearchSpace("const5", {{"id", {0, 1, 2, 3, 4}}}), {}};
  suite.model = [](const Point& p) {
    const std::int64_t id = p.at("id");
    if (id < 0 || id > 4) throw InputError("const5 has ids 0..4");
    SyntheticConfig cfg;
    cfg.id = "const5/" + p.label();
    cfg.distribution = {DistributionKind::Normal, 10.0 * static_cast<double>(id + 1), 0.0};
    cfg.per_obs_duration_s = 1e-3;
    return cfg;
  };
  return suite;
}

SyntheticSuite demo96() {
  SearchSpace space = build_dgemm_space(DgemmSpaceKind::Reduced);
  SyntheticSuite suite{SearchSpace("demo96", space.axes()), {}};
  suite.model = [space](const Point& p) {
    const std::size_t i = flat_index(space, p);
    double mean = 50.0 + 45.0 * static_cast<double>((i * 37) % 96) / 95.0;
    if (i == kDemo96RunnerUpIndex) mean = 100.0;
    if (i == kDemo96TopIndex) mean = 105.0;
    SyntheticConfig cfg;
    cfg.id = "demo96/" + p.label();
    cfg.distribution = {DistributionKind::Normal, mean, 0.01 * mean};
    cfg.per_obs_duration_s = 5e-3;
    return cfg;
  };
  return suite;
}

}  // namespace

std::optional<SyntheticSuite> find_synthetic_suite(std::string_view name) {
  if (name == "demo5") return demo5();
  if (name == "demo96") return demo96();
  if (name == "const5") return const5();
  return std::nullopt;
}

}  // namespace rooftune
