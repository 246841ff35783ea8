#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rooftune/error.hpp"
#include "rooftune/stats.hpp"

using namespace rooftune;

TEST_CASE("empty and single-observation states") {
  OnlineStats s;
  CHECK(s.count() == 0);
  CHECK(s.mean() == 0.0);
  CHECK_THROWS_AS((void)sample_variance(s), UndefinedVarianceError);
  s.update(4.5);
  CHECK(s.count() == 1);
  CHECK(s.mean() == 4.5);
  CHECK(s.corrected_sum() == 0.0);
  CHECK_THROWS_AS((void)sample_variance(s), UndefinedVarianceError);
  CHECK_THROWS_AS((void)confidence_interval(s, 0.99), UndefinedVarianceError);
}

TEST_CASE("textbook sequence") {
  // 2,4,4,4,5,5,7,9: mean 5, sum of squared deviations 32.
  OnlineStats s;
  for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}) s.update(x);
  CHECK(s.mean() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(s.corrected_sum() == doctest::Approx(32.0).epsilon(1e-15));
  CHECK(sample_variance(s) == doctest::Approx(32.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("constant stream has zero variance and zero-width interval") {
  OnlineStats s;
  for (int i = 0; i < 50; ++i) s.update(100.0);
  CHECK(sample_variance(s) == 0.0);
  const auto ci = confidence_interval(s, 0.99);
  CHECK(ci.half_width == 0.0);
  CHECK(ci.lower() == 100.0);
  CHECK(ci.upper() == 100.0);
}

TEST_CASE("non-finite observations are rejected without touching the state") {
  OnlineStats s;
  s.update(1.0);
  s.update(2.0);
  const OnlineStats before = s;
  CHECK_THROWS_AS(s.update(std::numeric_limits<double>::quiet_NaN()), InputError);
  CHECK_THROWS_AS(s.update(std::numeric_limits<double>::infinity()), InputError);
  CHECK(s == before);
}

TEST_CASE("matches a two-pass oracle on random data") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> len(2, 500);
    std::normal_distribution<double> d(trial * 3.0, 1.0 + trial % 7);
    std::vector<double> xs(static_cast<std::size_t>(len(gen)));
    OnlineStats s;
    for (double& x : xs) {
      x = d(gen);
      s.update(x);
    }
    const auto want = oracle::two_pass(xs);
    CHECK(oracle::rel_err(s.mean(), want.mean) < 1e-12);
    CHECK(oracle::rel_err(sample_variance(s), want.variance) < 1e-12);
  }
}

TEST_CASE("large offset keeps variance accurate") {
  std::vector<double> xs;
  OnlineStats s;
  std::mt19937_64 gen(11);
  std::normal_distribution<double> d(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    xs.push_back(1e9 + d(gen));
    s.update(xs.back());
  }
  const auto want = oracle::two_pass(xs);
  CHECK(oracle::rel_err(sample_variance(s), want.variance) < 1e-6);
}

TEST_CASE("tiny spread under a large offset") {
  std::vector<double> xs;
  OnlineStats s;
  std::mt19937_64 gen(12);
  std::normal_distribution<double> d(0.0, 1e-3);
  for (int i = 0; i < 500; ++i) {
    xs.push_back(1e9 + d(gen));
    s.update(xs.back());
  }
  const auto want = oracle::two_pass(xs);
  CHECK(oracle::rel_err(sample_variance(s), want.variance) < 1e-9);
  CHECK(oracle::rel_err(s.mean(), want.mean) < 1e-15);
}

TEST_CASE("mean close to zero relative to the spread") {
  // Mean about 1e-7 of the standard deviation.
  std::vector<double> xs;
  for (int i = 0; i < 400; ++i) xs.push_back(i % 2 ? 1.0 + 1e-7 : -1.0 + 1e-7);
  OnlineStats s;
  for (double x : xs) s.update(x);
  const auto want = oracle::two_pass(xs);
  CHECK(oracle::rel_err(s.mean(), want.mean) < 1e-12);
}

TEST_CASE("equality compares the observable moments") {
  OnlineStats a;
  for (double x : {5.0, 7.0, 9.5}) a.update(x);
  const auto b = OnlineStats::from_moments(a.count(), a.mean(), a.corrected_sum());
  CHECK(a == b);
  OnlineStats c = a;
  c.update(1.0);
  CHECK_FALSE(a == c);
}

TEST_CASE("from_moments restores an identical state and validates") {
  OnlineStats s;
  for (double x : {1.0, 3.0, 8.0}) s.update(x);
  const auto r = OnlineStats::from_moments(s.count(), s.mean(), s.corrected_sum());
  CHECK(r == s);
  CHECK_THROWS_AS((void)OnlineStats::from_moments(3, 1.0, -1.0), InputError);
  CHECK_THROWS_AS((void)OnlineStats::from_moments(0, 1.0, 0.0), InputError);
  CHECK_THROWS_AS((void)OnlineStats::from_moments(2, std::nan(""), 0.0), InputError);
}

TEST_CASE("two-sided normal quantiles") {
  CHECK(normal_quantile_two_sided(0.99) == oracle::kZ99);
  CHECK(normal_quantile_two_sided(0.95) == oracle::kZ95);
  CHECK(normal_quantile_two_sided(0.90) == oracle::kZ90);
  // The 99% value as printed in the literature, to its seven decimals.
  CHECK(std::abs(normal_quantile_two_sided(0.99) - 2.5758293) < 5e-8);
  // Untabulated levels: P(|Z| <= z) = level, checked through erf.
  for (double level : {0.5, 0.8, 0.975, 0.999, 0.9999}) {
    const double z = normal_quantile_two_sided(level);
    CHECK(std::erf(z / std::sqrt(2.0)) == doctest::Approx(level).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)normal_quantile_two_sided(0.0), InputError);
  CHECK_THROWS_AS((void)normal_quantile_two_sided(1.0), InputError);
}

TEST_CASE("confidence interval half-width is z * s / sqrt(n)") {
  OnlineStats s;
  std::vector<double> xs{99.0, 101.0, 100.5, 99.5, 100.0, 102.0};
  for (double x : xs) s.update(x);
  const auto want = oracle::two_pass(xs);
  const auto ci = confidence_interval(s, 0.99);
  CHECK(ci.mean == doctest::Approx(want.mean).epsilon(1e-14));
  CHECK(ci.half_width ==
        doctest::Approx(oracle::kZ99 * std::sqrt(want.variance / 6.0)).epsilon(1e-13));
  CHECK(ci.level == 0.99);
}

TEST_CASE("coefficient of variation") {
  OnlineStats s;
  for (double x : {9.0, 10.0, 11.0}) s.update(x);
  CHECK(coefficient_of_variation(s) == doctest::Approx(0.1).epsilon(1e-14));
  OnlineStats z;
  for (double x : {-1.0, 1.0}) z.update(x);
  CHECK_THROWS_AS((void)coefficient_of_variation(z), DivisionError);
}
