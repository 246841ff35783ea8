#include "rooftune/roofline/roofline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rooftune/error.hpp"

namespace rooftune {

void validate(const HardwareSpec& s) {
  const bool positive = s.cpu_freq_ghz > 0 && s.cores > 0 && s.avx_vector_bits > 0 &&
                        s.avx_ops_per_cycle > 0 && s.avx_units > 0 && s.sockets > 0 &&
                        s.dram_freq_mhz > 0 && s.channels > 0 && s.bytes_per_transfer > 0 &&
                        s.l3_bytes > 0;
  if (!positive) throw InputError("hardware spec '" + s.name + "': all fields must be positive");
  if (s.avx_vector_bits % 64 != 0) {
    throw InputError("hardware spec '" + s.name + "': vector width must be a multiple of 64 bits");
  }
}

double operational_intensity(double work_flop, double traffic_bytes) {
  if (traffic_bytes == 0.0) throw DivisionError("operational intensity undefined for zero traffic");
  return work_flop / traffic_bytes;
}

double roofline_value(double intensity, double bandwidth_gbs, double peak_gflops) {
  return std::min(bandwidth_gbs * intensity, peak_gflops);
}

int avx_ops_per_cycle_dp(int vector_bits, int ops_per_cycle) {
  if (vector_bits != 128 && vector_bits != 256 && vector_bits != 512) {
    throw InputError("vector width must be 128, 256 or 512 bits");
  }
  if (ops_per_cycle <= 0) throw InputError("ops per cycle must be positive");
  return (vector_bits / 8) * ops_per_cycle / 8;
}

namespace {
void check_sockets(const HardwareSpec& spec, int socket_count) {
  if (socket_count < 1 || socket_count > spec.sockets) {
    throw InputError("socket count " + std::to_string(socket_count) + " outside 1.." +
                     std::to_string(spec.sockets) + " for '" + spec.name + "'");
  }
}
}  // namespace

double theoretical_flops(const HardwareSpec& spec, int socket_count) {
  validate(spec);
  check_sockets(spec, socket_count);
  const int per_cycle = avx_ops_per_cycle_dp(spec.avx_vector_bits, spec.avx_ops_per_cycle);
  return spec.cpu_freq_ghz * static_cast<double>(spec.cores * per_cycle * spec.avx_units * socket_count);
}

double theoretical_bandwidth(const HardwareSpec& spec, int socket_count) {
  validate(spec);
  check_sockets(spec, socket_count);
  return spec.dram_freq_mhz * static_cast<double>(spec.channels * spec.bytes_per_transfer * socket_count) / 1000.0;
}

double utilization_percent(double measured, double theoretical) {
  if (theoretical == 0.0) throw DivisionError("utilization undefined for zero theoretical peak");
  return 100.0 * measured / theoretical;
}

RooflineModel build_model(std::vector<Ceiling> compute_peaks, std::vector<Ceiling> bandwidth_peaks) {
  if (compute_peaks.empty() || bandwidth_peaks.empty()) {
    throw InputError("a roofline needs at least one compute and one bandwidth ceiling");
  }
  auto check = [](const std::vector<Ceiling>& v) {
    for (const auto& c : v) {
      if (!(c.value > 0.0) || !std::isfinite(c.value)) {
        throw InputError("ceiling '" + c.label + "' must be positive");
      }
    }
  };
  check(compute_peaks);
  check(bandwidth_peaks);
  auto by_value_desc = [](const Ceiling& a, const Ceiling& b) { return a.value > b.value; };
  std::stable_sort(compute_peaks.begin(), compute_peaks.end(), by_value_desc);
  std::stable_sort(bandwidth_peaks.begin(), bandwidth_peaks.end(), by_value_desc);

  RooflineModel model{std::move(compute_peaks), std::move(bandwidth_peaks), {}};
  for (const auto& c : model.compute) {
    for (const auto& b : model.bandwidth) model.ridges.push_back({c.label, b.label, c.value / b.value});
  }
  return model;
}

std::vector<double> log_grid(double i_min, double i_max, int samples_per_decade) {
  if (!(i_min > 0.0) || !(i_max > i_min) || !std::isfinite(i_max)) {
    throw InputError("intensity range must satisfy 0 < I_min < I_max");
  }
  if (samples_per_decade < 1) throw InputError("samples per decade must be positive");
  const double decades = std::log10(i_max / i_min);
  const auto intervals = std::max<long>(1, std::lround(std::ceil(decades * samples_per_decade - 1e-9)));
  std::vector<double> grid(static_cast<std::size_t>(intervals) + 1);
  for (long j = 0; j <= intervals; ++j) {
    grid[static_cast<std::size_t>(j)] = i_min * std::pow(10.0, decades * static_cast<double>(j) / static_cast<double>(intervals));
  }
  grid.front() = i_min;
  grid.back() = i_max;
  return grid;
}

RooflineTable tabulate(const RooflineModel& model, double i_min, double i_max, int samples_per_decade) {
  RooflineTable t;
  t.intensities = log_grid(i_min, i_max, samples_per_decade);
  for (const auto& c : model.compute) {
    for (const auto& b : model.bandwidth) t.columns.push_back(b.label + " / " + c.label);
  }
  for (double i : t.intensities) {
    std::vector<double> row;
    row.reserve(t.columns.size());
    for (const auto& c : model.compute) {
      for (const auto& b : model.bandwidth) row.push_back(roofline_value(i, b.value, c.value));
    }
    t.values.push_back(std::move(row));
  }
  return t;
}

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string to_csv(const RooflineTable& table) {
  std::string out = "intensity_flop_per_byte";
  for (const auto& c : table.columns) out += "," + csv_field(c);
  out += '\n';
  for (std::size_t r = 0; r < table.intensities.size(); ++r) {
    out += fmt17(table.intensities[r]);
    for (double v : table.values[r]) out += "," + fmt17(v);
    out += '\n';
  }
  return out;
}

std::string measured_points_csv(const std::vector<MeasuredPoint>& points) {
  std::string out = "label,intensity,gflops\n";
  for (const auto& p : points) out += csv_field(p.label) + "," + fmt17(p.intensity) + "," + fmt17(p.gflops) + "\n";
  return out;
}

std::string render_svg(const RooflineModel& model, const std::vector<MeasuredPoint>& points,
                       double i_min, double i_max) {
  log_grid(i_min, i_max, 1);  // range check
  constexpr double kWidth = 800, kHeight = 560, kLeft = 80, kRight = 220, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double y_min = model.bandwidth.back().value * i_min;
  double y_max = model.compute.front().value;
  for (const auto& p : points) {
    if (p.gflops > 0) {
      y_min = std::min(y_min, p.gflops);
      y_max = std::max(y_max, p.gflops);
    }
  }
  const double ly0 = std::floor(std::log10(y_min));
  const double ly1 = std::ceil(std::log10(y_max * 1.5));
  const double lx0 = std::log10(i_min);
  const double lx1 = std::log10(i_max);
  auto px = [&](double i) { return kLeft + (std::log10(i) - lx0) / (lx1 - lx0) * plot_w; };
  auto py = [&](double v) { return kTop + (ly1 - std::log10(v)) / (ly1 - ly0) * plot_h; };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };

  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                            "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double d = std::ceil(lx0); d <= std::floor(lx1); d += 1.0) {
    const double x = px(std::pow(10.0, d));
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x) << "\" y2=\"" << kTop + plot_h
        << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"middle\">1e" << d
        << "</text>\n";
  }
  for (double d = ly0; d <= ly1; d += 1.0) {
    const double y = py(std::pow(10.0, d));
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << num(y)
        << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">Operational intensity (FLOP/byte)</text>\n";
  svg << "<text transform=\"translate(20," << kTop + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">Performance (GFLOP/s)</text>\n";

  std::size_t series = 0;
  for (const auto& c : model.compute) {
    for (const auto& b : model.bandwidth) {
      const char* color = kColors[series % std::size(kColors)];
      const double ridge = c.value / b.value;
      std::vector<double> xs{i_min};
      if (ridge > i_min && ridge < i_max) xs.push_back(ridge);
      xs.push_back(i_max);
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (double i : xs) svg << num(px(i)) << "," << num(py(roofline_value(i, b.value, c.value))) << " ";
      svg << "\"/>\n";
      if (ridge > i_min && ridge < i_max) {
        svg << "<circle cx=\"" << num(px(ridge)) << "\" cy=\"" << num(py(c.value)) << "\" r=\"3.5\" fill=\""
            << color << "\"><title>ridge " << num(ridge) << " FLOP/byte</title></circle>\n";
      }
      svg << "<text x=\"" << kLeft + plot_w + 8 << "\" y=\"" << kTop + 12 + 14 * static_cast<double>(series)
          << "\" fill=\"" << color << "\">" << xml_escape(b.label + " / " + c.label) << "</text>\n";
      ++series;
    }
  }
  for (const auto& p : points) {
    if (!(p.gflops > 0) || p.intensity < i_min || p.intensity > i_max) continue;
    svg << "<rect x=\"" << num(px(p.intensity) - 4) << "\" y=\"" << num(py(p.gflops) - 4)
        << "\" width=\"8\" height=\"8\" fill=\"black\"><title>" << xml_escape(p.label) << "</title></rect>\n";
    svg << "<text x=\"" << num(px(p.intensity) + 6) << "\" y=\"" << num(py(p.gflops) - 6) << "\">"
        << xml_escape(p.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

MemoryLevel classify_working_set(double working_set_bytes, const HardwareSpec& spec, int socket_count) {
  validate(spec);
  check_sockets(spec, socket_count);
  const double l3 = spec.l3_bytes * socket_count;
  if (working_set_bytes <= 0.5 * l3) return MemoryLevel::L3;
  if (working_set_bytes >= 4.0 * l3) return MemoryLevel::Dram;
  return MemoryLevel::Transition;
}

}  // namespace rooftune
