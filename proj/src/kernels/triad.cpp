#include "rooftune/kernels/triad.hpp"

#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <string>
#include <system_error>
#include <thread>

#include "rooftune/error.hpp"
#include "rooftune/rng.hpp"

namespace rooftune {

std::pair<std::size_t, std::size_t> static_block(std::size_t length, unsigned threads, unsigned t) {
  const std::size_t begin = length * t / threads;
  const std::size_t end = length * (t + 1) / threads;
  return {begin, end};
}

std::pair<double, double> triad_rates(std::size_t length, double seconds) {
  const double raw = kTriadFlopsPerElement * static_cast<double>(length) / seconds * 1e-9;
  int exp = 0;
  const double mant = std::frexp(raw, &exp);
  const double gflops = std::ldexp(std::trunc(std::ldexp(mant, 48)), exp - 48);
  return {gflops, gflops * (kTriadBytesPerElement / kTriadFlopsPerElement)};
}

namespace {

// Runs `body(t)` on policy.threads pinned workers. Returns false if any
// worker could not be pinned.
template <typename Body>
bool run_pinned(const std::vector<int>& cpus, Body&& body) {
  std::atomic<bool> pinned_all{true};
  std::vector<std::jthread> workers;
  workers.reserve(cpus.size());
  try {
    for (unsigned t = 0; t < cpus.size(); ++t) {
      workers.emplace_back([&, t] {
        if (!pin_current_thread(cpus[t])) pinned_all = false;
        body(t);
      });
    }
  } catch (const std::system_error& e) {
    throw KernelError(std::string("failed to start TRIAD worker threads: ") + e.what());
  }
  workers.clear();
  return pinned_all;
}

}  // namespace

PreparedTriad::PreparedTriad(const TriadConfig& cfg, const AffinityPolicy& policy,
                             std::uint64_t seed, const CpuTopology& topology)
    : cfg_(cfg), policy_(policy), cpus_(plan_affinity(policy, topology)) {
  if (cfg.length == 0) throw InputError("TRIAD vector length must be positive");
  if (!std::isfinite(cfg.gamma)) throw InputError("TRIAD gamma must be finite");
  a_ = AlignedBuffer(cfg.length);
  b_ = AlignedBuffer(cfg.length);
  c_ = AlignedBuffer(cfg.length);

  const auto threads = static_cast<unsigned>(cpus_.size());
  const bool pinned = run_pinned(cpus_, [&](unsigned t) {
    const auto [begin, end] = static_block(cfg_.length, threads, t);
    for (std::size_t i = begin; i < end; ++i) {
      a_[i] = SplitMix64::uniform_at(seed, i);
      b_[i] = SplitMix64::uniform_at(seed ^ 1, i);
      c_[i] = 0.0;
    }
  });
  pin_failed_ = !pinned;
}

Measurement PreparedTriad::run_once() {
  const auto threads = static_cast<unsigned>(cpus_.size());
  const std::size_t n = cfg_.length;
  const double gamma = cfg_.gamma;
  double* __restrict c = c_.data();
  const double* __restrict a = a_.data();
  const double* __restrict b = b_.data();

  // Timestamps come from the barrier's completion step, which runs once
  // every thread has arrived and before any is released, so the interval
  // covers exactly the kernel whichever thread happens to run first.
  std::chrono::steady_clock::time_point stamps[2];
  int phase = 0;
  auto on_phase = [&]() noexcept {
    if (phase < 2) stamps[phase] = std::chrono::steady_clock::now();
    ++phase;
  };
  std::barrier sync(static_cast<std::ptrdiff_t>(threads) + 1, on_phase);

  std::atomic<bool> pinned_all{true};
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    try {
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
          if (!pin_current_thread(cpus_[t])) pinned_all = false;
          const auto [begin, end] = static_block(n, threads, t);
          sync.arrive_and_wait();
          for (std::size_t i = begin; i < end; ++i) c[i] = a[i] + gamma * b[i];
          sync.arrive_and_wait();
        });
      }
    } catch (const std::system_error& e) {
      // Release any workers already parked on the barrier before unwinding.
      for (std::size_t missing = workers.size(); missing < threads; ++missing) sync.arrive_and_drop();
      sync.arrive_and_drop();
      throw KernelError(std::string("failed to start TRIAD worker threads: ") + e.what());
    }
    sync.arrive_and_wait();
    sync.arrive_and_wait();
  }
  const auto t0 = stamps[0];
  const auto t1 = stamps[1];

  Measurement out;
  auto ticks = (t1 - t0).count();
  if (ticks <= 0) {
    ticks = 1;
    out.flags |= kBelowTimerResolution;
  }
  out.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::duration(ticks)).count();
  if (pin_failed_ || !pinned_all) out.flags |= kUnpinned;
  const auto [gflops, gbps] = triad_rates(n, out.elapsed_s);
  out.gflops = gflops;
  out.gbytes_per_s = gbps;
  out.value = gbps;
  return out;
}

}  // namespace rooftune
