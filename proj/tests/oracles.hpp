#pragma once

// Independent reference computations for the tests. Nothing here calls
// into the library under test.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace oracle {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // n - 1 denominator
};

// Two-pass mean and variance in long double.
inline Moments two_pass(std::span<const double> xs) {
  long double sum = 0.0L;
  for (double x : xs) sum += x;
  const long double mean = sum / static_cast<long double>(xs.size());
  long double ss = 0.0L;
  long double comp = 0.0L;  // corrected two-pass term
  for (double x : xs) {
    const long double d = x - mean;
    ss += d * d;
    comp += d;
  }
  const auto n = static_cast<long double>(xs.size());
  const long double var = xs.size() > 1 ? (ss - comp * comp / n) / (n - 1.0L) : 0.0L;
  return {static_cast<double>(mean), static_cast<double>(var)};
}

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

// C (n x m) = alpha * A (n x k) * B (k x m) + beta * C, row-major, naive
// i-j-p loop with long double accumulation.
inline void triple_loop_gemm(std::int64_t n, std::int64_t m, std::int64_t k, double alpha,
                             const std::vector<double>& a, const std::vector<double>& b, double beta,
                             std::vector<double>& c) {
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < m; ++j) {
      long double acc = 0.0L;
      for (std::int64_t p = 0; p < k; ++p) acc += static_cast<long double>(a[i * k + p]) * b[p * m + j];
      const double prev = c[i * m + j];
      c[i * m + j] = static_cast<double>(alpha * acc + (beta == 0.0 ? 0.0L : beta * prev));
    }
  }
}

// Two-sided standard normal quantiles, from published tables.
inline constexpr double kZ90 = 1.6448536269514722;
inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

}  // namespace oracle
