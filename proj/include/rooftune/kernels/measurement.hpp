#pragma once

#include <cstdint>

namespace rooftune {

enum MeasurementFlags : std::uint32_t {
  kMeasurementOk = 0,
  // Elapsed time fell below the clock resolution; a one-tick duration was substituted.
  kBelowTimerResolution = 1u << 0,
  // Threads could not be pinned and ran where the scheduler placed them.
  kUnpinned = 1u << 1,
};

// One timed observation. `value` is the metric the tuner maximizes:
// GFLOP/s for DGEMM and synthetic kernels, GB/s for TRIAD.
struct Measurement {
  double value = 0.0;
  double gflops = 0.0;
  double gbytes_per_s = 0.0;
  double elapsed_s = 0.0;
  std::uint32_t flags = kMeasurementOk;
};

}  // namespace rooftune
