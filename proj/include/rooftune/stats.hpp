#pragma once

#include <cstdint>

namespace rooftune {

// Single-pass accumulator for mean and corrected sum of squares
// (Welford's recurrence). Observations are metric values such as GFLOP/s.
// The recurrence runs on x - x_1 so that a large common offset does not
// eat the low digits of the deviations. The reported mean comes from a
// compensated running sum, which keeps it accurate even when it is tiny
// next to the spread.
class OnlineStats {
 public:
  OnlineStats() = default;

  // Rebuilds a state from serialized moments. Throws InputError when the
  // moments are inconsistent (negative count or sum, non-empty state from
  // zero count).
  static OnlineStats from_moments(std::uint64_t count, double mean, double corrected_sum);

  // Adds one observation. Throws InputError on NaN or infinity.
  void update(double x);

  [[nodiscard]] std::uint64_t count() const { return count_; }
  [[nodiscard]] double mean() const { return mean_; }
  [[nodiscard]] double corrected_sum() const { return corrected_sum_; }

  // Equal when the observable moments are equal; the pivot is internal.
  friend bool operator==(const OnlineStats& a, const OnlineStats& b) {
    return a.count_ == b.count_ && a.mean_ == b.mean_ && a.corrected_sum_ == b.corrected_sum_;
  }

 private:
  std::uint64_t count_ = 0;
  double pivot_ = 0.0;
  double offset_ = 0.0;  // running mean of x - pivot_
  double sum_ = 0.0;     // Neumaier sum of x
  double carry_ = 0.0;   // its compensation term
  double mean_ = 0.0;
  double corrected_sum_ = 0.0;
};

struct ConfidenceInterval {
  double mean = 0.0;
  double half_width = 0.0;
  double level = 0.0;

  [[nodiscard]] double lower() const { return mean - half_width; }
  [[nodiscard]] double upper() const { return mean + half_width; }
};

// corrected_sum / (count - 1). Throws UndefinedVarianceError for count < 2.
double sample_variance(const OnlineStats& s);

// Two-sided standard normal quantile for a central coverage `level`,
// i.e. the z with P(|Z| <= z) = level. Levels 0.90, 0.95 and 0.99 are
// tabulated; other levels use a rational approximation refined by one
// Halley step. Throws InputError unless 0 < level < 1.
double normal_quantile_two_sided(double level);

// Normal-theory interval mean ± z * sqrt(S^2 / n).
ConfidenceInterval confidence_interval(const OnlineStats& s, double level);

// sqrt(S^2) / |mean|. Throws DivisionError for a zero mean.
double coefficient_of_variation(const OnlineStats& s);

}  // namespace rooftune
