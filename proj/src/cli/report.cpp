#include "rooftune/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "rooftune/error.hpp"
#include "rooftune/search/config.hpp"
#include "rooftune/search/mode.hpp"

namespace rooftune::cli {

TimeBasis time_basis_from_string(std::string_view s) {
  if (s == "auto") return TimeBasis::Auto;
  if (s == "wall") return TimeBasis::Wall;
  if (s == "observed") return TimeBasis::Observed;
  throw InputError("unknown time basis '" + std::string(s) + "' (expected auto|wall|observed)");
}

ComparisonReport build_report(const std::vector<ResultsArchive>& archives, std::optional<std::size_t> baseline,
                              TimeBasis basis) {
  if (archives.empty()) throw InputError("report needs at least one archive");
  if (baseline && *baseline >= archives.size()) throw InputError("baseline index out of range");

  ComparisonReport rep;
  rep.kernel = archives.front().manifest.kernel;
  const KernelKind kind = kernel_kind_from_string(rep.kernel);
  rep.unit = std::string(metric_unit(kind));
  if (basis == TimeBasis::Auto) basis = kind == KernelKind::Synthetic ? TimeBasis::Observed : TimeBasis::Wall;
  rep.basis = basis;

  std::set<int> sockets;
  std::set<std::uint64_t> seeds;
  std::optional<std::size_t> baseline_row;
  for (std::size_t i = 0; i < archives.size(); ++i) {
    const ResultsArchive& a = archives[i];
    if (a.manifest.kernel != rep.kernel) {
      throw ValidationError("archives mix kernels '" + rep.kernel + "' and '" + a.manifest.kernel + "'");
    }
    seeds.insert(a.manifest.seed);
    sockets.insert(a.manifest.sockets);

    const std::string& mode = a.result.mode;
    auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [&](const ReportRow& r) { return r.mode == mode; });
    if (it == rep.rows.end()) {
      rep.rows.push_back({mode, technique_name(mode), {}, 0.0, 0, 1.0});
      it = std::prev(rep.rows.end());
    }
    if (it->perf.contains(a.manifest.sockets)) {
      throw ValidationError(fmt::format("two archives for mode '{}' at {} socket(s)", mode, a.manifest.sockets));
    }
    it->perf[a.manifest.sockets] = a.result.best_value;
    it->time_s += basis == TimeBasis::Wall ? a.result.total_wall_time_s : a.result.total_observation_time_s;
    it->observations += a.result.total_observations;
    if (baseline && *baseline == i) baseline_row = static_cast<std::size_t>(it - rep.rows.begin());
  }
  rep.sockets.assign(sockets.begin(), sockets.end());

  if (!baseline_row) {
    auto def = std::find_if(rep.rows.begin(), rep.rows.end(), [](const ReportRow& r) { return r.mode == "default"; });
    baseline_row = def == rep.rows.end() ? 0 : static_cast<std::size_t>(def - rep.rows.begin());
  }
  rep.baseline_row = *baseline_row;
  const double base_time = rep.rows[rep.baseline_row].time_s;
  for (ReportRow& r : rep.rows) {
    r.speedup = r.time_s > 0.0 ? base_time / r.time_s : std::nan("");
  }

  if (seeds.size() > 1) {
    rep.warnings.push_back(fmt::format("archives were produced with {} different seeds; results may not be comparable",
                                       seeds.size()));
  }
  for (const ReportRow& r : rep.rows) {
    if (r.perf.size() != rep.sockets.size()) {
      rep.warnings.push_back("mode '" + r.mode + "' is missing some socket settings");
    }
  }
  return rep;
}

namespace {

std::string perf_cell(const ReportRow& row, int sockets) {
  const auto it = row.perf.find(sockets);
  if (it == row.perf.end()) return "-";
  if (!std::isfinite(it->second)) return "failed";
  return fmt::format("{:.2f}", it->second);
}

std::string speedup_cell(double s) { return std::isfinite(s) ? fmt::format("{:.2f}x", s) : "-"; }

std::vector<std::vector<std::string>> cells(const ComparisonReport& rep, bool csv) {
  std::vector<std::vector<std::string>> t;
  std::vector<std::string> header{"Technique"};
  for (int s : rep.sockets) header.push_back(fmt::format("S{} Perf ({})", s, rep.unit));
  header.insert(header.end(), {"Time", "Speedup", "Observations"});
  if (csv) header.insert(header.begin() + 1, "Mode");
  t.push_back(std::move(header));

  for (const ReportRow& r : rep.rows) {
    std::vector<std::string> row{r.technique};
    if (csv) row.push_back(r.mode);
    for (int s : rep.sockets) row.push_back(perf_cell(r, s));
    row.push_back(csv ? fmt::format("{:.2f}", r.time_s) : fmt::format("{:.2f}s", r.time_s));
    row.push_back(speedup_cell(r.speedup));
    row.push_back(std::to_string(r.observations));
    t.push_back(std::move(row));
  }
  return t;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_text(const ComparisonReport& rep) {
  const auto t = cells(rep, false);
  std::vector<std::size_t> width(t.front().size(), 0);
  for (const auto& row : t)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

  std::string out = fmt::format("Kernel: {}  baseline: {}  time: {}\n", rep.kernel,
                                rep.rows[rep.baseline_row].technique,
                                rep.basis == TimeBasis::Wall ? "wall clock" : "summed measurement");
  for (std::size_t r = 0; r < t.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      if (c == 0) {
        line += fmt::format("{:<{}}", t[r][c], width[c]);
      } else {
        line += fmt::format("  {:>{}}", t[r][c], width[c]);
      }
    }
    out += line + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      out += std::string(total - 2, '-') + "\n";
    }
  }
  for (const auto& w : rep.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string render_csv(const ComparisonReport& rep) {
  std::string out;
  for (const auto& row : cells(rep, true)) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_field(row[c]);
    out += "\n";
  }
  return out;
}

}  // namespace rooftune::cli
