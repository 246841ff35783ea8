#include "rooftune/cli/archive.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "rooftune/error.hpp"
#include "rooftune/stats.hpp"

namespace rooftune::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// -inf marks failed scores; JSON has no infinities, so it becomes null.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double finite_or_failed(const json& j) { return j.is_null() ? kFailedScore : j.get<double>(); }

json config_to_json(const KernelConfig& c) {
  json params = json::array();
  for (const auto& [name, value] : c.point.coords) params.push_back({name, value});
  return {{"label", c.label()}, {"params", params}};
}

KernelConfig config_from_json(const json& j, KernelKind kind) {
  KernelConfig c{kind, {}};
  for (const json& p : j.at("params")) {
    c.point.coords.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::int64_t>());
  }
  if (c.label() != j.at("label").get<std::string>()) {
    throw InputError("config label '" + j.at("label").get<std::string>() + "' does not match its params");
  }
  return c;
}

json stats_to_json(const OnlineStats& s) {
  return {{"count", s.count()},
          {"mean", s.mean()},
          {"corrected_sum", s.corrected_sum()},
          {"variance", s.count() >= 2 ? json(sample_variance(s)) : json(nullptr)}};
}

OnlineStats stats_from_json(const json& j) {
  return OnlineStats::from_moments(j.at("count").get<std::uint64_t>(), j.at("mean").get<double>(),
                                   j.at("corrected_sum").get<double>());
}

json outcome_to_json(const EvalOutcome& o) {
  json j = stats_to_json(o.stats);
  j["elapsed"] = o.elapsed_s;
  j["stop_reason"] = to_string(o.stop_reason);
  if (!o.error.empty()) j["error"] = o.error;
  return j;
}

EvalOutcome outcome_from_json(const json& j) {
  EvalOutcome o;
  o.stats = stats_from_json(j);
  o.elapsed_s = j.at("elapsed").get<double>();
  o.stop_reason = stop_reason_from_string(j.at("stop_reason").get<std::string>());
  if (j.contains("error")) o.error = j.at("error").get<std::string>();
  return o;
}

json result_to_json(const ConfigResult& r) {
  json inv = json::array();
  for (const auto& o : r.per_invocation) inv.push_back(outcome_to_json(o));
  json j;
  j["config"] = config_to_json(r.config);
  j["invocations"] = inv;
  j["aggregate"] = stats_to_json(r.aggregate);
  j["best_invocation_mean"] = finite_or_null(r.best_invocation_mean);
  j["score"] = finite_or_null(r.score);
  j["elapsed"] = r.total_elapsed_s;
  j["observations"] = r.observations();
  j["failed"] = r.failed;
  j["outer_pruned"] = r.outer_pruned;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

ConfigResult result_from_json(const json& j, KernelKind kind) {
  ConfigResult r;
  r.config = config_from_json(j.at("config"), kind);
  for (const json& o : j.at("invocations")) r.per_invocation.push_back(outcome_from_json(o));
  r.aggregate = stats_from_json(j.at("aggregate"));
  r.best_invocation_mean = finite_or_failed(j.at("best_invocation_mean"));
  r.score = finite_or_failed(j.at("score"));
  r.total_elapsed_s = j.at("elapsed").get<double>();
  r.failed = j.at("failed").get<bool>();
  r.outer_pruned = j.at("outer_pruned").get<bool>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  if (r.observations() != j.at("observations").get<std::uint64_t>()) {
    throw InputError("observation count of '" + r.config.label() + "' does not match its invocations");
  }
  return r;
}

}  // namespace

json archive_to_json(const ResultsArchive& a) {
  const TuningResult& t = a.result;
  json results = json::array();
  std::uint64_t failed = 0;
  for (const auto& r : t.results) {
    results.push_back(result_to_json(r));
    failed += r.failed ? 1 : 0;
  }
  json j;
  j["schema_version"] = kArchiveSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", a.tool_version}};
  j["started_at"] = a.started_at;
  j["finished_at"] = a.finished_at;
  j["manifest"] = manifest_to_json(a.manifest);
  j["results"] = results;
  j["summary"] = {{"mode", t.mode},
                  {"best_config", t.best_config ? config_to_json(*t.best_config) : json(nullptr)},
                  {"best_value", finite_or_null(t.best_value)},
                  {"configurations", t.results.size()},
                  {"failed_configurations", failed},
                  {"total_wall_time", t.total_wall_time_s},
                  {"total_observation_time", t.total_observation_time_s},
                  {"total_observations", t.total_observations}};
  return j;
}

ResultsArchive archive_from_json(const json& j) {
  try {
    if (!j.is_object()) throw InputError("archive must be a JSON object");
    const int version = j.at("schema_version").get<int>();
    if (version != kArchiveSchemaVersion) {
      throw InputError("unsupported archive schema_version " + std::to_string(version));
    }
    if (j.at("tool").at("name").get<std::string>() != kToolName) throw InputError("archive not written by rooftune");
    ResultsArchive a;
    a.tool_version = j.at("tool").at("version").get<std::string>();
    a.started_at = j.at("started_at").get<std::string>();
    a.finished_at = j.at("finished_at").get<std::string>();
    a.manifest = manifest_from_json(j.at("manifest"));
    const KernelKind kind = kernel_kind_from_string(a.manifest.kernel);

    TuningResult& t = a.result;
    for (const json& r : j.at("results")) t.results.push_back(result_from_json(r, kind));
    const json& s = j.at("summary");
    t.mode = s.at("mode").get<std::string>();
    if (!s.at("best_config").is_null()) t.best_config = config_from_json(s.at("best_config"), kind);
    t.best_value = finite_or_failed(s.at("best_value"));
    t.total_wall_time_s = s.at("total_wall_time").get<double>();
    t.total_observation_time_s = s.at("total_observation_time").get<double>();
    t.total_observations = s.at("total_observations").get<std::uint64_t>();
    if (s.at("configurations").get<std::size_t>() != t.results.size()) {
      throw InputError("summary configuration count does not match results");
    }
    return a;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed archive: ") + e.what());
  }
}

std::string serialize_archive(const ResultsArchive& archive) { return archive_to_json(archive).dump(2) + "\n"; }

ResultsArchive parse_archive(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("archive is not valid JSON: ") + e.what());
  }
  return archive_from_json(j);
}

void save_archive(const fs::path& path, const ResultsArchive& archive) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << serialize_archive(archive);
}

ResultsArchive load_archive(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read archive '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_archive(ss.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace rooftune::cli
