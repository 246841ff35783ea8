#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rooftune/budget.hpp"
#include "rooftune/search/config.hpp"

// Parent <-> worker protocol for subprocess invocations.
//
// The parent starts `<tool> worker` with the arguments produced by
// worker_arguments(). The worker prints exactly one line of JSON to stdout
// and exits 0:
//
//   {"config":{"label":"n=500,m=512,k=64","params":[["n",500],["m",512],["k",64]]},
//    "corrected_sum":1.25,"count":12,"elapsed":0.48,"kernel":"dgemm",
//    "mean":311.5,"schema":"rooftune-worker/1","stop_reason":"CiConverged",
//    "variance":0.11363636363636363}
//
// `variance` is null when count < 2; `corrected_sum` carries the exact
// accumulator so decoding is lossless. Kernel failures exit 4 after printing
// {"schema":"rooftune-worker/1","error":"..."}.

namespace rooftune {

inline constexpr std::string_view kWorkerSchema = "rooftune-worker/1";

struct WorkerRequest {
  KernelConfig config;
  std::uint64_t invocation = 0;
  Budget budget;
  std::optional<double> best;
  KernelOptions options;
};

struct WorkerRecord {
  KernelConfig config;
  EvalOutcome outcome;

  friend bool operator==(const WorkerRecord&, const WorkerRecord&) = default;
};

// Arguments after the tool path, starting with "worker".
std::vector<std::string> worker_arguments(const WorkerRequest& request);

std::string encode_worker_record(const WorkerRecord& record);
std::string encode_worker_error(std::string_view message);

// Parses one result line. Throws InputError on malformed input and
// KernelError when the line is an error record.
WorkerRecord decode_worker_record(std::string_view line);

// Formats a double so it parses back to the identical value.
std::string format_exact(double x);

}  // namespace rooftune
