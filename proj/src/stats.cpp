#include "rooftune/stats.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rooftune/error.hpp"

namespace rooftune {

OnlineStats OnlineStats::from_moments(std::uint64_t count, double mean, double corrected_sum) {
  if (!std::isfinite(mean) || !std::isfinite(corrected_sum) || corrected_sum < 0.0) {
    throw InputError("invalid moments: mean and corrected sum must be finite, sum >= 0");
  }
  if (count == 0 && (mean != 0.0 || corrected_sum != 0.0)) {
    throw InputError("invalid moments: empty state must have zero mean and sum");
  }
  if (count == 1 && corrected_sum != 0.0) {
    throw InputError("invalid moments: a single observation has zero corrected sum");
  }
  OnlineStats s;
  s.count_ = count;
  s.pivot_ = mean;
  s.sum_ = mean * static_cast<double>(count);
  s.mean_ = mean;
  s.corrected_sum_ = corrected_sum;
  return s;
}

void OnlineStats::update(double x) {
  if (!std::isfinite(x)) {
    throw InputError("observation must be finite");
  }
  if (count_ == 0) pivot_ = x;
  ++count_;
  const double y = x - pivot_;  // exact while x stays within a factor 2 of the pivot
  const double delta = y - offset_;
  offset_ += delta / static_cast<double>(count_);
  // delta * (y - m_n) == ((n-1)/n) * (y - m_{n-1})^2
  corrected_sum_ += delta * (y - offset_);
  if (corrected_sum_ < 0.0) corrected_sum_ = 0.0;

  const double t = sum_ + x;
  carry_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
  sum_ = t;
  const double total = sum_ + carry_;
  mean_ = std::isfinite(total) ? total / static_cast<double>(count_) : pivot_ + offset_;
}

double sample_variance(const OnlineStats& s) {
  if (s.count() < 2) throw UndefinedVarianceError();
  return s.corrected_sum() / static_cast<double>(s.count() - 1);
}

namespace {

// Acklam's rational approximation of the standard normal inverse CDF.
double inverse_normal_cdf(double p) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x = 0.0;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step against the exact CDF brings the error near machine precision.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double normal_quantile_two_sided(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw InputError("confidence level must lie in (0, 1)");
  }
  if (level == 0.90) return 1.6448536269514722;
  if (level == 0.95) return 1.9599639845400540;
  if (level == 0.99) return 2.5758293035489004;
  return inverse_normal_cdf(0.5 + 0.5 * level);
}

ConfidenceInterval confidence_interval(const OnlineStats& s, double level) {
  const double z = normal_quantile_two_sided(level);
  const double var = sample_variance(s);
  return {s.mean(), z * std::sqrt(var / static_cast<double>(s.count())), level};
}

double coefficient_of_variation(const OnlineStats& s) {
  const double var = sample_variance(s);
  if (s.mean() == 0.0) throw DivisionError("coefficient of variation undefined for zero mean");
  return std::sqrt(var) / std::abs(s.mean());
}

}  // namespace rooftune
