#include "rooftune/search/wire.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "rooftune/error.hpp"

namespace rooftune {

using nlohmann::json;

std::string format_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> worker_arguments(const WorkerRequest& r) {
  std::vector<std::string> args{"worker",
                                "--kernel", std::string(to_string(r.config.kind)),
                                "--space", r.options.space,
                                "--invocation", std::to_string(r.invocation),
                                "--seed", std::to_string(r.options.seed),
                                "--max-time", format_exact(r.budget.max_time_s),
                                "--iterations", std::to_string(r.budget.max_count),
                                "--min-count", std::to_string(r.budget.min_count),
                                "--ci-level", format_exact(r.budget.ci_level),
                                "--ci-tol", format_exact(r.budget.ci_rel_tol),
                                "--backend", r.options.backend,
                                "--threads", std::to_string(r.options.affinity.threads),
                                "--affinity", std::string(to_string(r.options.affinity.kind)),
                                "--gamma", format_exact(r.options.triad_gamma)};
  if (!r.budget.enable_ci_stop) args.emplace_back("--no-ci-stop");
  if (!r.budget.enable_prune_stop) args.emplace_back("--no-prune");
  if (r.best) {
    args.emplace_back("--best");
    args.push_back(format_exact(*r.best));
  }
  for (const auto& [name, value] : r.config.point.coords) {
    args.emplace_back("--param");
    args.push_back(name + "=" + std::to_string(value));
  }
  return args;
}

std::string encode_worker_record(const WorkerRecord& record) {
  const OnlineStats& s = record.outcome.stats;
  json params = json::array();
  for (const auto& [name, value] : record.config.point.coords) params.push_back({name, value});
  json j;
  j["schema"] = kWorkerSchema;
  j["kernel"] = to_string(record.config.kind);
  j["config"] = {{"label", record.config.label()}, {"params", params}};
  j["count"] = s.count();
  j["mean"] = s.mean();
  j["corrected_sum"] = s.corrected_sum();
  j["variance"] = s.count() >= 2 ? json(sample_variance(s)) : json(nullptr);
  j["elapsed"] = record.outcome.elapsed_s;
  j["stop_reason"] = to_string(record.outcome.stop_reason);
  if (!record.outcome.error.empty()) j["error"] = record.outcome.error;
  return j.dump();
}

std::string encode_worker_error(std::string_view message) {
  json j;
  j["schema"] = kWorkerSchema;
  j["error"] = message;
  return j.dump();
}

WorkerRecord decode_worker_record(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw InputError(std::string("worker output is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != kWorkerSchema) {
      throw InputError("unexpected worker schema " + j.at("schema").dump());
    }
    if (!j.contains("count") && j.contains("error")) {
      throw KernelError(j.at("error").get<std::string>());
    }
    WorkerRecord r;
    r.config.kind = kernel_kind_from_string(j.at("kernel").get<std::string>());
    for (const auto& p : j.at("config").at("params")) {
      r.config.point.coords.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::int64_t>());
    }
    r.outcome.stats = OnlineStats::from_moments(j.at("count").get<std::uint64_t>(),
                                                j.at("mean").get<double>(),
                                                j.at("corrected_sum").get<double>());
    r.outcome.elapsed_s = j.at("elapsed").get<double>();
    r.outcome.stop_reason = stop_reason_from_string(j.at("stop_reason").get<std::string>());
    if (j.contains("error")) r.outcome.error = j.at("error").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed worker record: ") + e.what());
  }
}

}  // namespace rooftune
