#include "rooftune/kernels/dgemm.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rooftune/error.hpp"
#include "rooftune/rng.hpp"
#include "timer.hpp"

#if defined(ROOFTUNE_HAVE_CBLAS)
#include <cblas.h>
#endif

namespace rooftune {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw InputError("DGEMM size product overflows 64 bits");
  return r;
}

void check_dims(const DgemmConfig& cfg) {
  if (cfg.n <= 0 || cfg.m <= 0 || cfg.k <= 0) {
    throw InputError("DGEMM dimensions must be positive");
  }
}

void check_spans(const DgemmConfig& cfg, std::span<const double> a, std::span<const double> b,
                 std::span<double> c) {
  check_dims(cfg);
  const auto n = static_cast<std::size_t>(cfg.n);
  const auto m = static_cast<std::size_t>(cfg.m);
  const auto k = static_cast<std::size_t>(cfg.k);
  if (a.size() != n * k || b.size() != k * m || c.size() != n * m) {
    throw InputError("DGEMM operand sizes do not match the configured dimensions");
  }
}

}  // namespace

double dgemm_flop_count(const DgemmConfig& cfg) {
  check_dims(cfg);
  const auto mn = checked_mul(static_cast<std::uint64_t>(cfg.m), static_cast<std::uint64_t>(cfg.n));
  const auto mnk = checked_mul(mn, static_cast<std::uint64_t>(cfg.k));
  return static_cast<double>(checked_mul(mnk, 2));
}

void PortableDgemmBackend::gemm(const DgemmConfig& cfg, std::span<const double> a,
                                std::span<const double> b, std::span<double> c) {
  check_spans(cfg, a, b, c);
  const auto n = static_cast<std::size_t>(cfg.n);
  const auto m = static_cast<std::size_t>(cfg.m);
  const auto k = static_cast<std::size_t>(cfg.k);

  if (cfg.beta == 0.0) {
    std::fill(c.begin(), c.end(), 0.0);
  } else if (cfg.beta != 1.0) {
    for (double& x : c) x *= cfg.beta;
  }

  constexpr std::size_t kRowBlock = 64;
  constexpr std::size_t kDepthBlock = 256;
  constexpr std::size_t kColBlock = 512;

  for (std::size_t i0 = 0; i0 < n; i0 += kRowBlock) {
    const std::size_t i1 = std::min(n, i0 + kRowBlock);
    for (std::size_t p0 = 0; p0 < k; p0 += kDepthBlock) {
      const std::size_t p1 = std::min(k, p0 + kDepthBlock);
      for (std::size_t j0 = 0; j0 < m; j0 += kColBlock) {
        const std::size_t j1 = std::min(m, j0 + kColBlock);
        for (std::size_t i = i0; i < i1; ++i) {
          double* crow = c.data() + i * m;
          for (std::size_t p = p0; p < p1; ++p) {
            const double aip = cfg.alpha * a[i * k + p];
            const double* brow = b.data() + p * m;
            for (std::size_t j = j0; j < j1; ++j) crow[j] += aip * brow[j];
          }
        }
      }
    }
  }
}

#if defined(ROOFTUNE_HAVE_CBLAS)
namespace {

class CblasDgemmBackend final : public DgemmBackend {
 public:
  [[nodiscard]] std::string_view name() const override { return "cblas"; }
  void gemm(const DgemmConfig& cfg, std::span<const double> a, std::span<const double> b,
            std::span<double> c) override {
    check_spans(cfg, a, b, c);
    constexpr auto kIntMax = static_cast<std::int64_t>(std::numeric_limits<int>::max());
    if (cfg.n > kIntMax || cfg.m > kIntMax || cfg.k > kIntMax) {
      throw InputError("DGEMM dimensions exceed the CBLAS integer range");
    }
    const int n = static_cast<int>(cfg.n);
    const int m = static_cast<int>(cfg.m);
    const int k = static_cast<int>(cfg.k);
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, n, m, k, cfg.alpha, a.data(), k,
                b.data(), m, cfg.beta, c.data(), m);
  }
};

}  // namespace
#endif

bool cblas_available() {
#if defined(ROOFTUNE_HAVE_CBLAS)
  return true;
#else
  return false;
#endif
}

std::unique_ptr<DgemmBackend> make_dgemm_backend(std::string_view name, unsigned threads) {
  if (name == "portable") return std::make_unique<PortableDgemmBackend>();
  if (name == "cblas" || name == "auto") {
#if defined(ROOFTUNE_HAVE_CBLAS)
#if defined(OPENBLAS_VERSION) || defined(OPENBLAS_THREAD)
    if (threads > 0) openblas_set_num_threads(static_cast<int>(threads));
#else
    (void)threads;
#endif
    return std::make_unique<CblasDgemmBackend>();
#else
    (void)threads;
    if (name == "auto") return std::make_unique<PortableDgemmBackend>();
    throw EnvironmentError("the cblas DGEMM backend is not available in this build");
#endif
  }
  throw InputError("unknown DGEMM backend '" + std::string(name) +
                   "' (expected portable|cblas|auto)");
}

PreparedDgemm::PreparedDgemm(const DgemmConfig& cfg, std::uint64_t seed, DgemmBackend& backend)
    : cfg_(cfg), backend_(&backend), flops_(dgemm_flop_count(cfg)) {
  const auto n = static_cast<std::uint64_t>(cfg.n);
  const auto m = static_cast<std::uint64_t>(cfg.m);
  const auto k = static_cast<std::uint64_t>(cfg.k);
  a_ = AlignedBuffer(checked_mul(n, k));
  b_ = AlignedBuffer(checked_mul(k, m));
  c_ = AlignedBuffer(checked_mul(n, m));

  SplitMix64 rng(seed);
  for (double& x : a_.span()) x = rng.uniform();
  for (double& x : b_.span()) x = rng.uniform();
  std::fill(c_.span().begin(), c_.span().end(), 0.0);

  backend_->gemm(cfg_, a_.span(), b_.span(), c_.span());
}

Measurement PreparedDgemm::run_once() {
  const detail::Timed t = detail::time_call([&] { backend_->gemm(cfg_, a_.span(), b_.span(), c_.span()); });
  Measurement out;
  out.elapsed_s = t.seconds;
  out.flags = t.flags;
  out.gflops = flops_ / t.seconds * 1e-9;
  out.value = out.gflops;
  return out;
}

}  // namespace rooftune
