#include "rooftune/kernels/affinity.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <thread>

#include "rooftune/error.hpp"

#if defined(__linux__)
#include <pthread.h>
#include <sched.h>
#endif

namespace rooftune {

std::string_view to_string(AffinityKind k) {
  return k == AffinityKind::Close ? "close" : "spread";
}

AffinityKind affinity_kind_from_string(std::string_view s) {
  if (s == "close") return AffinityKind::Close;
  if (s == "spread") return AffinityKind::Spread;
  throw InputError("unknown affinity policy '" + std::string(s) + "' (expected close|spread)");
}

std::size_t CpuTopology::cpu_count() const {
  std::size_t n = 0;
  for (const auto& s : sockets) n += s.size();
  return n;
}

CpuTopology CpuTopology::detect() {
  CpuTopology topo;
#if defined(__linux__)
  cpu_set_t set;
  CPU_ZERO(&set);
  if (sched_getaffinity(0, sizeof(set), &set) == 0) {
    std::map<int, std::vector<int>> by_package;
    for (int cpu = 0; cpu < CPU_SETSIZE; ++cpu) {
      if (!CPU_ISSET(cpu, &set)) continue;
      int package = 0;
      std::ifstream f("/sys/devices/system/cpu/cpu" + std::to_string(cpu) +
                      "/topology/physical_package_id");
      if (f) f >> package;
      by_package[package].push_back(cpu);
    }
    for (auto& [pkg, cpus] : by_package) topo.sockets.push_back(std::move(cpus));
  }
#endif
  if (topo.sockets.empty()) {
    const unsigned n = std::max(1u, std::thread::hardware_concurrency());
    std::vector<int> cpus(n);
    for (unsigned i = 0; i < n; ++i) cpus[i] = static_cast<int>(i);
    topo.sockets.push_back(std::move(cpus));
  }
  return topo;
}

std::vector<int> plan_affinity(const AffinityPolicy& policy, const CpuTopology& topology) {
  if (policy.threads == 0) throw InputError("thread count must be positive");
  if (topology.cpu_count() == 0) throw InputError("empty CPU topology");

  std::vector<int> order;
  order.reserve(topology.cpu_count());
  if (policy.kind == AffinityKind::Close) {
    for (const auto& socket : topology.sockets) {
      std::vector<int> ids = socket;
      std::sort(ids.begin(), ids.end());
      order.insert(order.end(), ids.begin(), ids.end());
    }
  } else {
    std::vector<std::vector<int>> sorted = topology.sockets;
    std::size_t longest = 0;
    for (auto& s : sorted) {
      std::sort(s.begin(), s.end());
      longest = std::max(longest, s.size());
    }
    for (std::size_t slot = 0; slot < longest; ++slot) {
      for (const auto& s : sorted) {
        if (slot < s.size()) order.push_back(s[slot]);
      }
    }
  }

  std::vector<int> plan(policy.threads);
  for (unsigned t = 0; t < policy.threads; ++t) plan[t] = order[t % order.size()];
  return plan;
}

bool pin_current_thread(int cpu) {
#if defined(__linux__)
  if (cpu < 0 || cpu >= CPU_SETSIZE) return false;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return pthread_setaffinity_np(pthread_self(), sizeof(set), &set) == 0;
#else
  (void)cpu;
  return false;
#endif
}

std::vector<std::pair<std::string, std::string>> affinity_environment(const AffinityPolicy& policy) {
  const std::string kind(to_string(policy.kind));
  const std::string threads = std::to_string(policy.threads);
  // Intel's runtime spells the two policies compact and scatter.
  const std::string kmp = policy.kind == AffinityKind::Close ? "granularity=core,compact" : "granularity=core,scatter";
  return {
      {"KMP_AFFINITY", kmp},
      {"OMP_PROC_BIND", kind},
      {"OMP_PLACES", "cores"},
      {"OMP_NUM_THREADS", threads},
      {"OPENBLAS_NUM_THREADS", threads},
      {"MKL_NUM_THREADS", threads},
  };
}

}  // namespace rooftune
