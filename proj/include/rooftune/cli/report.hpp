#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rooftune/cli/archive.hpp"

namespace rooftune::cli {

// Which time a row's speedup is computed from. Auto picks Observed for
// synthetic kernels (their durations are simulated) and Wall otherwise.
enum class TimeBasis { Auto, Wall, Observed };

TimeBasis time_basis_from_string(std::string_view s);

struct ReportRow {
  std::string mode;
  std::string technique;
  std::map<int, double> perf;  // socket count -> best value
  double time_s = 0.0;         // summed over the row's archives
  std::uint64_t observations = 0;
  double speedup = 1.0;
};

struct ComparisonReport {
  std::string kernel;
  std::string unit;
  std::vector<int> sockets;  // ascending
  std::vector<ReportRow> rows;
  std::size_t baseline_row = 0;
  TimeBasis basis = TimeBasis::Wall;  // never Auto
  std::vector<std::string> warnings;
};

// Groups archives by mode; each (mode, socket count) pair may appear once.
// The baseline row is the one holding archives[baseline] when given, else
// the "default" mode when present, else the first row. Throws
// ValidationError when kernels differ or a (mode, sockets) pair repeats.
ComparisonReport build_report(const std::vector<ResultsArchive>& archives,
                              std::optional<std::size_t> baseline, TimeBasis basis);

// Aligned text table with warnings as trailing notes.
std::string render_text(const ComparisonReport& report);
std::string render_csv(const ComparisonReport& report);

}  // namespace rooftune::cli
