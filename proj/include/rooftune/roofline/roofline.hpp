#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rooftune {

// Vendor parameters of one machine. Frequencies in GHz (core) and MHz
// (DRAM transfer rate); counts are per socket.
struct HardwareSpec {
  std::string name;
  double cpu_freq_ghz = 0.0;
  int cores = 0;
  int avx_vector_bits = 0;
  int avx_ops_per_cycle = 2;  // fused multiply-add
  int avx_units = 0;
  int sockets = 0;
  double dram_freq_mhz = 0.0;
  int channels = 0;
  int bytes_per_transfer = 8;  // 64-bit memory bus
  double l3_bytes = 0.0;       // per socket

  friend bool operator==(const HardwareSpec&, const HardwareSpec&) = default;
};

// Throws InputError if any field is non-positive or the vector width is
// not a multiple of 64 bits.
void validate(const HardwareSpec& spec);

// W / Q in FLOP/byte. Throws DivisionError for zero traffic.
double operational_intensity(double work_flop, double traffic_bytes);

// min(B * I, F_p).
double roofline_value(double intensity, double bandwidth_gbs, double peak_gflops);

// Double-precision lanes times ops per cycle: (bits / 8) * ops / 8.
// Throws InputError unless vector_bits is 128, 256 or 512.
int avx_ops_per_cycle_dp(int vector_bits, int ops_per_cycle);

// freq * cores * DP ops/cycle * units * sockets, GFLOP/s.
// Throws InputError unless 1 <= socket_count <= spec.sockets.
double theoretical_flops(const HardwareSpec& spec, int socket_count);

// DRAM MT/s * channels * bytes per transfer * sockets, GB/s.
double theoretical_bandwidth(const HardwareSpec& spec, int socket_count);

// 100 * measured / theoretical.
double utilization_percent(double measured, double theoretical);

struct Ceiling {
  std::string label;
  double value = 0.0;  // GFLOP/s for compute, GB/s for bandwidth
};

struct RidgePoint {
  std::string compute_label;
  std::string bandwidth_label;
  double intensity = 0.0;  // F_p / B
};

struct RooflineModel {
  std::vector<Ceiling> compute;    // descending
  std::vector<Ceiling> bandwidth;  // descending
  std::vector<RidgePoint> ridges;  // every (compute, bandwidth) pair
};

// Throws InputError if either list is empty or holds a non-positive value.
RooflineModel build_model(std::vector<Ceiling> compute_peaks, std::vector<Ceiling> bandwidth_peaks);

// Log-spaced intensities from i_min to i_max inclusive, with
// `samples_per_decade` points per factor of ten. Endpoints are exact.
std::vector<double> log_grid(double i_min, double i_max, int samples_per_decade);

struct RooflineTable {
  std::vector<std::string> columns;         // "<bandwidth> / <compute>"
  std::vector<double> intensities;
  std::vector<std::vector<double>> values;  // values[row][column]
};

// One column per (compute, bandwidth) pair evaluating min(B*I, F_p) on the grid.
RooflineTable tabulate(const RooflineModel& model, double i_min, double i_max, int samples_per_decade);

// CSV with header "intensity_flop_per_byte,<column>..." and %.17g values.
std::string to_csv(const RooflineTable& table);

struct MeasuredPoint {
  std::string label;
  double intensity = 0.0;
  double gflops = 0.0;
};

// "label,intensity,gflops" rows.
std::string measured_points_csv(const std::vector<MeasuredPoint>& points);

// Self-contained log-log SVG of every roof line, ridge points and measured points.
std::string render_svg(const RooflineModel& model, const std::vector<MeasuredPoint>& points,
                       double i_min, double i_max);

enum class MemoryLevel { L3, Transition, Dram };

// Working set <= 0.5 x aggregate L3 is an L3 candidate, >= 4 x is DRAM,
// anything between is neither.
MemoryLevel classify_working_set(double working_set_bytes, const HardwareSpec& spec, int socket_count);

}  // namespace rooftune
