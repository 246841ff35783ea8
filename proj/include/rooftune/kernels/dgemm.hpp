#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rooftune/kernels/buffer.hpp"
#include "rooftune/kernels/measurement.hpp"

namespace rooftune {

// C (n x m) <- alpha * A (n x k) * B (k x m) + beta * C, row-major.
struct DgemmConfig {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t k = 0;
  double alpha = 1.0;
  double beta = 0.0;
};

// 2*m*n*k. Throws InputError on non-positive dims or 64-bit overflow.
double dgemm_flop_count(const DgemmConfig& cfg);

// Dense multiply provider. Implementations must honour beta == 0 without
// reading C.
class DgemmBackend {
 public:
  virtual ~DgemmBackend() = default;
  [[nodiscard]] virtual std::string_view name() const = 0;
  virtual void gemm(const DgemmConfig& cfg, std::span<const double> a, std::span<const double> b,
                    std::span<double> c) = 0;
};

// Cache-blocked reference implementation; no external dependencies.
class PortableDgemmBackend final : public DgemmBackend {
 public:
  [[nodiscard]] std::string_view name() const override { return "portable"; }
  void gemm(const DgemmConfig& cfg, std::span<const double> a, std::span<const double> b,
            std::span<double> c) override;
};

// True when the build links a CBLAS implementation.
bool cblas_available();

// "portable", "cblas", or "auto" (cblas when built, else portable).
// Throws EnvironmentError if cblas is requested but not built, InputError
// for unknown names.
std::unique_ptr<DgemmBackend> make_dgemm_backend(std::string_view name, unsigned threads = 0);

// Matrices allocated, seeded and warmed up for repeated timing.
class PreparedDgemm {
 public:
  // Fills A then B from one SplitMix64 stream seeded with `seed`, zeroes C,
  // and runs exactly one untimed warm-up multiply.
  PreparedDgemm(const DgemmConfig& cfg, std::uint64_t seed, DgemmBackend& backend);

  // One timed multiply; value = gflops = 2mnk / elapsed / 1e9.
  Measurement run_once();

  [[nodiscard]] const DgemmConfig& config() const { return cfg_; }
  [[nodiscard]] std::span<const double> a() const { return a_.span(); }
  [[nodiscard]] std::span<const double> b() const { return b_.span(); }
  [[nodiscard]] std::span<const double> c() const { return c_.span(); }
  [[nodiscard]] std::span<double> mutable_c() { return c_.span(); }

 private:
  DgemmConfig cfg_;
  DgemmBackend* backend_;
  double flops_;
  AlignedBuffer a_;
  AlignedBuffer b_;
  AlignedBuffer c_;
};

}  // namespace rooftune
