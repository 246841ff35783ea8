#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rooftune {

enum class AffinityKind { Close, Spread };

std::string_view to_string(AffinityKind k);
// Accepts "close" or "spread". Throws InputError otherwise.
AffinityKind affinity_kind_from_string(std::string_view s);

struct AffinityPolicy {
  AffinityKind kind = AffinityKind::Close;
  unsigned threads = 1;

  friend bool operator==(const AffinityPolicy&, const AffinityPolicy&) = default;
};

// Logical CPUs usable by this process, grouped by socket (physical package).
struct CpuTopology {
  std::vector<std::vector<int>> sockets;

  // Reads the allowed CPU set and /sys package ids; falls back to one
  // socket with hardware_concurrency() CPUs.
  static CpuTopology detect();

  [[nodiscard]] std::size_t cpu_count() const;
};

// CPU id per thread. Close fills socket 0 in ascending id order before
// moving on; Spread deals threads round-robin across sockets. Threads
// beyond the CPU count wrap around.
std::vector<int> plan_affinity(const AffinityPolicy& policy, const CpuTopology& topology);

// Pins the calling thread to `cpu`. Returns false when the platform or the
// allowed CPU set does not permit it.
bool pin_current_thread(int cpu);

// Environment for runtimes that manage their own threads (OpenMP BLAS):
// KMP_AFFINITY, OMP_PROC_BIND and the thread-count variables.
std::vector<std::pair<std::string, std::string>> affinity_environment(const AffinityPolicy& policy);

}  // namespace rooftune
