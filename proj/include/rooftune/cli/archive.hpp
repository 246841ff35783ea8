#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rooftune/cli/manifest.hpp"
#include "rooftune/search/exhaustive.hpp"

namespace rooftune::cli {

inline constexpr int kArchiveSchemaVersion = 1;

// One tune run, self-describing: the effective manifest plus every
// configuration's per-invocation statistics.
struct ResultsArchive {
  std::string tool_version{kToolVersion};
  std::string started_at;   // UTC, ISO 8601
  std::string finished_at;
  RunManifest manifest;
  TuningResult result;
};

nlohmann::json archive_to_json(const ResultsArchive& archive);
// Throws InputError on schema violations.
ResultsArchive archive_from_json(const nlohmann::json& j);

// Sorted keys, two-space indent, trailing newline. Doubles are written in
// shortest round-trip form, so parse(serialize(a)) reproduces `a` and
// re-serializing yields identical bytes.
std::string serialize_archive(const ResultsArchive& archive);
ResultsArchive parse_archive(std::string_view text);

void save_archive(const std::filesystem::path& path, const ResultsArchive& archive);
ResultsArchive load_archive(const std::filesystem::path& path);

// "2026-01-31T12:00:00Z"
std::string utc_timestamp();

}  // namespace rooftune::cli
