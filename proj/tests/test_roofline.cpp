#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "rooftune/error.hpp"
#include "rooftune/roofline/roofline.hpp"

using namespace rooftune;

namespace {

constexpr double kMiB = 1024.0 * 1024.0;

HardwareSpec broadwell_2650() { return {"Xeon E5-2650 v4", 2.2, 12, 256, 2, 1, 2, 2400, 4, 8, 30 * kMiB}; }
HardwareSpec skylake_6132() { return {"Xeon Gold 6132", 2.6, 14, 512, 2, 2, 2, 2666, 6, 8, 19.25 * kMiB}; }

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("vector ops per cycle") {
  CHECK(avx_ops_per_cycle_dp(512, 2) == 16);
  CHECK(avx_ops_per_cycle_dp(256, 2) == 8);
  CHECK(avx_ops_per_cycle_dp(128, 2) == 4);
  CHECK_THROWS_AS(avx_ops_per_cycle_dp(384, 2), InputError);
}

TEST_CASE("theoretical peaks") {
  // freq * cores * lanes*ops * units * sockets, written out by hand.
  CHECK(rel_close(theoretical_flops(broadwell_2650(), 2), 2.2 * 12 * 8 * 1 * 2, 1e-12));
  CHECK(rel_close(theoretical_flops(broadwell_2650(), 1), 211.2, 1e-12));
  CHECK(rel_close(theoretical_flops(skylake_6132(), 1), 1164.8, 1e-12));
  CHECK(rel_close(theoretical_bandwidth(broadwell_2650(), 1), 76.8, 1e-12));
  CHECK(rel_close(theoretical_bandwidth(skylake_6132(), 1), 127.968, 1e-12));
  CHECK(rel_close(theoretical_bandwidth(skylake_6132(), 2), 255.936, 1e-12));
  CHECK_THROWS_AS((void)theoretical_flops(broadwell_2650(), 3), InputError);
  CHECK_THROWS_AS((void)theoretical_bandwidth(broadwell_2650(), 0), InputError);
  HardwareSpec bad = broadwell_2650();
  bad.cores = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
}

TEST_CASE("intensity and roofline function") {
  CHECK(operational_intensity(2.0, 24.0) == 1.0 / 12.0);
  CHECK_THROWS_AS((void)operational_intensity(1.0, 0.0), DivisionError);
  CHECK(roofline_value(1.0, 100.0, 500.0) == 100.0);
  CHECK(roofline_value(10.0, 100.0, 500.0) == 500.0);
  CHECK(roofline_value(5.0, 100.0, 500.0) == 500.0);
  CHECK(utilization_percent(408.71, 422.4) == doctest::Approx(96.759).epsilon(1e-4));
  CHECK_THROWS_AS((void)utilization_percent(1.0, 0.0), DivisionError);
}

TEST_CASE("model sorts ceilings and places ridges") {
  const auto m = build_model({{"S1", 211.2}, {"S2", 422.4}}, {{"DRAM S1", 76.8}, {"L3 S1", 256.07}});
  CHECK(m.compute.front().label == "S2");
  CHECK(m.bandwidth.front().label == "L3 S1");
  REQUIRE(m.ridges.size() == 4);
  for (const auto& r : m.ridges) {
    double f = 0, b = 0;
    for (const auto& c : m.compute)
      if (c.label == r.compute_label) f = c.value;
    for (const auto& c : m.bandwidth)
      if (c.label == r.bandwidth_label) b = c.value;
    CHECK(std::abs(b * r.intensity - f) <= 1e-12 * f);
    CHECK(roofline_value(r.intensity, b, f) == doctest::Approx(f));
  }
  CHECK_THROWS_AS(build_model({}, {{"x", 1.0}}), InputError);
  CHECK_THROWS_AS(build_model({{"x", -1.0}}, {{"y", 1.0}}), InputError);
}

TEST_CASE("log grid") {
  const auto g = log_grid(0.01, 100.0, 10);
  REQUIRE(g.size() == 41);
  CHECK(g.front() == 0.01);
  CHECK(g.back() == 100.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(std::pow(10.0, 0.1)));
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 10), InputError);
  CHECK_THROWS_AS(log_grid(1.0, 1.0, 10), InputError);
  CHECK_THROWS_AS(log_grid(0.1, 1.0, 0), InputError);
}

TEST_CASE("table and CSV") {
  const auto m = build_model({{"peak", 400.0}}, {{"dram", 80.0}});
  const auto t = tabulate(m, 0.1, 100.0, 5);
  REQUIRE(t.columns.size() == 1);
  CHECK(t.columns[0] == "dram / peak");
  for (std::size_t r = 0; r < t.intensities.size(); ++r) {
    CHECK(t.values[r][0] == std::min(80.0 * t.intensities[r], 400.0));
  }
  const std::string csv = to_csv(t);
  std::istringstream in(csv);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "intensity_flop_per_byte,dram / peak");
  CHECK(first == "0.10000000000000001,8");
  const std::string pts = measured_points_csv({{"DGEMM, S1", 10.0, 390.5}});
  CHECK(pts.find("\"DGEMM, S1\",10,390.5") != std::string::npos);
}

TEST_CASE("SVG output is a self-contained document") {
  const auto m = build_model({{"peak", 400.0}}, {{"dram", 80.0}});
  const std::string svg = render_svg(m, {{"point <1>", 1.0 / 12.0, 6.0}}, 0.01, 100.0);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("point &lt;1&gt;") != std::string::npos);
}

TEST_CASE("working set classification") {
  const HardwareSpec s = broadwell_2650();
  CHECK(classify_working_set(3 * 1024, s, 1) == MemoryLevel::L3);
  CHECK(classify_working_set(15 * kMiB, s, 1) == MemoryLevel::L3);
  CHECK(classify_working_set(16 * kMiB, s, 1) == MemoryLevel::Transition);
  CHECK(classify_working_set(120 * kMiB, s, 1) == MemoryLevel::Dram);
  // Two sockets double the aggregate cache.
  CHECK(classify_working_set(30 * kMiB, s, 2) == MemoryLevel::L3);
  CHECK(classify_working_set(120 * kMiB, s, 2) == MemoryLevel::Transition);
}
