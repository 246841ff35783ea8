#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rooftune/kernels/affinity.hpp"
#include "rooftune/kernels/buffer.hpp"
#include "rooftune/kernels/measurement.hpp"

namespace rooftune {

inline constexpr double kTriadFlopsPerElement = 2.0;
inline constexpr double kTriadBytesPerElement = 24.0;

// C <- A + gamma * B over vectors of `length` doubles.
struct TriadConfig {
  std::size_t length = 0;
  double gamma = 3.0;
};

[[nodiscard]] inline std::size_t triad_working_set_bytes(std::size_t length) {
  return length * static_cast<std::size_t>(kTriadBytesPerElement);
}

// Half-open [begin, end) block of thread `t` out of `threads` under the
// static schedule; block sizes differ by at most one element.
std::pair<std::size_t, std::size_t> static_block(std::size_t length, unsigned threads, unsigned t);

// Three vectors, first-touched by the pinned threads that later run the
// kernel. Element i of A and B is the counter-based SplitMix64 draw
// uniform_at(seed, i) / uniform_at(seed ^ 1, i), so contents do not depend
// on the thread count.
class PreparedTriad {
 public:
  PreparedTriad(const TriadConfig& cfg, const AffinityPolicy& policy, std::uint64_t seed,
                const CpuTopology& topology = CpuTopology::detect());

  // Spawns policy.threads workers, times the kernel between two barriers
  // and joins them. value = gbytes_per_s; gflops / gbytes_per_s == 1/12.
  Measurement run_once();

  [[nodiscard]] const TriadConfig& config() const { return cfg_; }
  [[nodiscard]] const std::vector<int>& cpu_plan() const { return cpus_; }
  [[nodiscard]] std::span<const double> a() const { return a_.span(); }
  [[nodiscard]] std::span<const double> b() const { return b_.span(); }
  [[nodiscard]] std::span<const double> c() const { return c_.span(); }

 private:
  TriadConfig cfg_;
  AffinityPolicy policy_;
  std::vector<int> cpus_;
  AlignedBuffer a_;
  AlignedBuffer b_;
  AlignedBuffer c_;
  bool pin_failed_ = false;
};

// Rates for `length` elements in `seconds`. The FLOP rate is rounded to 48
// mantissa bits and the byte rate is exactly 12x that, so the reported
// ratio is exactly the kernel's intensity of 1/12.
std::pair<double, double> triad_rates(std::size_t length, double seconds);

}  // namespace rooftune
