#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "rooftune/budget.hpp"
#include "rooftune/kernels/affinity.hpp"
#include "rooftune/roofline/roofline.hpp"
#include "rooftune/search/exhaustive.hpp"
#include "rooftune/search/runner.hpp"
#include "rooftune/search/space.hpp"

namespace rooftune::cli {

inline constexpr std::string_view kToolName = "rooftune";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Everything a tune run needs. Defaults match the reference tuner
// configuration: 10 invocations, 200 iterations, 10 s per invocation.
struct RunManifest {
  std::optional<HardwareSpec> hardware;
  std::string kernel = "dgemm";
  std::string space;  // empty: kernel default (reduced, triad, demo5)
  std::uint64_t seed = 1;
  std::string out = "results";
  int sockets = 1;

  Budget budget;
  std::string mode = "cio";
  bool reverse = false;
  bool iterations_explicit = false;  // hand-tuned modes require it
  std::uint64_t invocations = 10;
  ScoreKind score = ScoreKind::BestInvocationMean;
  Isolation isolation = Isolation::InProcess;
  double worker_grace_s = 10.0;

  std::string backend = "auto";
  AffinityPolicy affinity;
  double gamma = 3.0;
  std::uint64_t triad_min_bytes = kTriadMinBytes;
  std::uint64_t triad_max_bytes = kTriadMaxBytes;

  [[nodiscard]] std::string effective_space() const;
};

// YAML hardware description; `l3_mib` is MiB per socket. Throws InputError
// on missing keys or invalid values.
HardwareSpec load_hardware_spec(const std::filesystem::path& path);
HardwareSpec hardware_spec_from_yaml_text(const std::string& text);
std::string hardware_spec_to_yaml(const HardwareSpec& spec);
nlohmann::json hardware_spec_to_json(const HardwareSpec& spec);
HardwareSpec hardware_spec_from_json(const nlohmann::json& j);

// Applies a YAML manifest on top of `base`. A relative `hardware` path is
// resolved against the manifest's directory.
RunManifest load_manifest(const std::filesystem::path& path, RunManifest base = {});
RunManifest manifest_from_yaml_text(const std::string& text, RunManifest base = {},
                                    const std::filesystem::path& relative_to = {});
std::string manifest_to_yaml(const RunManifest& m);

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

}  // namespace rooftune::cli
