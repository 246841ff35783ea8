#pragma once

#include <chrono>
#include <cstdint>

#include "rooftune/kernels/measurement.hpp"

namespace rooftune::detail {

struct Timed {
  double seconds = 0.0;
  std::uint32_t flags = kMeasurementOk;
};

// Times `fn` on the monotonic clock. A zero-tick reading is replaced by one
// tick and flagged, so elapsed is always strictly positive.
template <typename Fn>
Timed time_call(Fn&& fn) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  fn();
  const auto t1 = Clock::now();
  Timed out;
  auto ticks = (t1 - t0).count();
  if (ticks <= 0) {
    ticks = 1;
    out.flags |= kBelowTimerResolution;
  }
  out.seconds = std::chrono::duration<double>(Clock::duration(ticks)).count();
  return out;
}

}  // namespace rooftune::detail
