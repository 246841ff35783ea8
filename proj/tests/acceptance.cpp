// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails or overruns its time limit.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "oracles.hpp"
#include "rooftune/budget.hpp"
#include "rooftune/cli/archive.hpp"
#include "rooftune/cli/commands.hpp"
#include "rooftune/cli/manifest.hpp"
#include "rooftune/kernels/dgemm.hpp"
#include "rooftune/kernels/triad.hpp"
#include "rooftune/roofline/roofline.hpp"
#include "rooftune/search/config.hpp"
#include "rooftune/search/exhaustive.hpp"
#include "rooftune/search/mode.hpp"
#include "rooftune/search/runner.hpp"
#include "rooftune/search/space.hpp"
#include "rooftune/search/wire.hpp"
#include "rooftune/stats.hpp"

using namespace rooftune;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Verdict()> run;
};

std::string hw_path(const std::string& name) {
  return std::string(ROOFTUNE_DATA_DIR) + "/hardware/" + name + ".yaml";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- 1

Verdict theoretical_peaks() {
  struct Row {
    const char* file;
    int flop_sockets;  // the published compute figure is dual-socket for Broadwell
    double flops;
    double bandwidth;  // single socket everywhere
  };
  const Row rows[] = {{"e5-2650v4", 2, 422.4, 76.8},
                      {"e5-2695v4", 2, 604.8, 76.8},
                      {"gold-6132", 1, 1164.8, 127.968},
                      {"gold-6148", 1, 1536.0, 127.968}};
  double worst = 0.0;
  for (const Row& r : rows) {
    const HardwareSpec spec = cli::load_hardware_spec(hw_path(r.file));
    worst = std::max(worst, oracle::rel_err(theoretical_flops(spec, r.flop_sockets), r.flops));
    worst = std::max(worst, oracle::rel_err(theoretical_bandwidth(spec, 1), r.bandwidth));
  }
  return {worst <= 1e-9, fmt::format("8 peaks, worst relative error {:.3g}", worst)};
}

// ---------------------------------------------------------------- 2

Verdict cardinalities() {
  const std::size_t initial = build_dgemm_space(DgemmSpaceKind::Initial).cardinality();
  const auto reduced = build_dgemm_space(DgemmSpaceKind::Reduced).enumerate();
  const std::int64_t optima[][3] = {{1000, 4096, 128}, {2000, 2048, 64},  {2000, 4096, 128},
                                    {4000, 2048, 128}, {4000, 512, 128},  {4000, 1024, 128}};
  int found = 0;
  for (const auto& o : optima) {
    found += std::any_of(reduced.begin(), reduced.end(), [&](const Point& p) {
      return p.at("n") == o[0] && p.at("m") == o[1] && p.at("k") == o[2];
    });
  }
  const bool pass = initial == 539 && reduced.size() == 96 && found == 6;
  return {pass, fmt::format("initial {}, reduced {}, optima present {}/6", initial, reduced.size(), found)};
}

// ---------------------------------------------------------------- 3

Verdict welford() {
  std::mt19937_64 gen(20211);
  std::uniform_int_distribution<int> length(2, 1000);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  double worst_plain = 0.0;
  double worst_shift = 0.0;
  int failures = 0;
  std::vector<double> xs;
  for (int seq = 0; seq < 10000; ++seq) {
    const bool shifted = seq % 4 == 3;
    const double scale = std::pow(10.0, exponent(gen));
    const double centre = shifted ? 1e9 : (seq % 2 ? 0.0 : 10.0 * scale);
    const bool uniform = seq % 3 == 0;
    xs.assign(static_cast<std::size_t>(length(gen)), 0.0);
    OnlineStats s;
    for (double& x : xs) {
      x = centre + scale * (uniform ? unit(gen) : normal(gen));
      s.update(x);
    }
    const auto want = oracle::two_pass(xs);
    const double err = std::max(oracle::rel_err(s.mean(), want.mean), oracle::rel_err(sample_variance(s), want.variance));
    if (shifted) {
      worst_shift = std::max(worst_shift, err);
      failures += err > 1e-6;
    } else {
      worst_plain = std::max(worst_plain, err);
      failures += err > 1e-12;
    }
  }
  return {failures == 0, fmt::format("10000 sequences, worst relative error {:.3g} unshifted, {:.3g} shifted, {} over "
                                     "tolerance",
                                     worst_plain, worst_shift, failures)};
}

// ---------------------------------------------------------------- 4

// First n at which the z-scaled standard error reaches `bound(mean)`, from
// the raw stream and long double two-pass moments.
template <class Bound>
std::size_t replay_stop(const std::vector<double>& xs, Bound bound) {
  for (std::size_t n = 2; n <= xs.size(); ++n) {
    const auto m = oracle::two_pass(std::span<const double>(xs.data(), n));
    const double hw = oracle::kZ99 * std::sqrt(m.variance) / std::sqrt(static_cast<double>(n));
    if (hw <= bound(m.mean)) return n;
  }
  return 0;
}

Verdict ci_stop() {
  int relative_miss = 0;
  int literal_miss = 0;
  int not_converged = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> d(100.0, 1.0);
    ObservationSource source = [&] {
      Measurement m;
      m.value = d(gen);
      m.elapsed_s = 1e-3;
      return m;
    };
    Budget b;
    b.max_count = 100000;
    b.max_time_s = 1e9;
    b.enable_prune_stop = false;
    const EvalOutcome out = evaluate(source, b, std::nullopt);
    not_converged += out.stop_reason != StopReason::CiConverged;

    // Offline replay of the same stream.
    std::mt19937_64 gen2(seed);
    std::normal_distribution<double> d2(100.0, 1.0);
    std::vector<double> xs(std::max<std::size_t>(out.stats.count() + 64, 256));
    for (double& x : xs) x = d2(gen2);
    const std::size_t rel = replay_stop(xs, [](double mean) { return 0.01 * std::abs(mean); });
    const std::size_t lit = replay_stop(xs, [](double) { return 1.0; });
    relative_miss += rel != out.stats.count();
    literal_miss += lit != out.stats.count();
  }
  return {relative_miss == 0 && not_converged == 0,
          fmt::format("100 seeds: {} disagreements with the 1%-of-mean replay, {} with a fixed half-width of 1, {} "
                      "not converged",
                      relative_miss, literal_miss, not_converged)};
}

// ---------------------------------------------------------------- 5, 6

struct Sweep {
  std::string best;
  double value = 0.0;
  std::uint64_t observations = 0;
};

Sweep sweep(const OptimizationMode& mode, std::uint64_t seed) {
  static const SyntheticSuite suite = *find_synthetic_suite("demo96");
  KernelOptions options;
  options.space = "demo96";
  options.seed = seed;
  InProcessRunner runner(make_source_factory(options));
  const SearchSettings settings{mode, Budget{}, 10, ScoreKind::BestInvocationMean, {}};
  const TuningResult r = exhaustive_search(suite.space, KernelKind::Synthetic, settings, runner);
  return {r.best_config ? r.best_config->label() : "", r.best_value, r.total_observations};
}

std::vector<OptimizationMode> fast_modes() {
  std::vector<OptimizationMode> modes;
  for (const char* m : {"c", "ci", "cio"}) {
    modes.push_back(parse_mode(m));
    modes.push_back(with_reverse(parse_mode(m)));
  }
  return modes;
}

Verdict argmax_preservation() {
  const auto modes = fast_modes();
  const OptimizationMode def = parse_mode("default");
  // A sweep agrees when it picks Default's configuration and reports a
  // value within 2% of Default's.
  std::vector<int> agree(modes.size(), 0);
  std::vector<int> same_config(modes.size(), 0);
  double worst_gap = 0.0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const Sweep base = sweep(def, seed);
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const Sweep s = sweep(modes[i], seed);
      const double gap = oracle::rel_err(s.value, base.value);
      same_config[i] += s.best == base.best;
      agree[i] += s.best == base.best && gap < 0.02;
      worst_gap = std::max(worst_gap, gap);
    }
  }
  bool pass = true;
  std::string per_mode;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    pass = pass && agree[i] >= 990;
    per_mode += fmt::format("{}{} {}/{}", i ? ", " : "", modes[i].label, agree[i], same_config[i]);
  }
  return {pass, fmt::format("agreeing/same-config of 1000: {}; worst value gap {:.2f}%", per_mode,
                            100.0 * worst_gap)};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Verdict pruning_speedup() {
  std::vector<double> c_ratio, cio_ratio;
  std::uint64_t default_obs = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Sweep base = sweep(parse_mode("default"), seed);
    default_obs = base.observations;
    c_ratio.push_back(static_cast<double>(base.observations) /
                      static_cast<double>(sweep(parse_mode("c"), seed).observations));
    cio_ratio.push_back(static_cast<double>(base.observations) /
                        static_cast<double>(sweep(parse_mode("cio"), seed).observations));
  }
  const double c = median(c_ratio);
  const double cio = median(cio_ratio);
  return {cio >= 5.0 && c >= 2.0 && default_obs == 96 * 10 * 200,
          fmt::format("default {} observations; median reduction C {:.1f}x, C+I+O {:.1f}x", default_obs, c, cio)};
}

// ---------------------------------------------------------------- 7

Verdict triad_semantics() {
  constexpr std::size_t n = 1000000;
  constexpr double gamma = 3.0;
  const CpuTopology topology = CpuTopology::detect();
  std::vector<double> first;
  std::size_t mismatches = 0;
  std::size_t cross = 0;
  bool ratio_exact = true;
  for (unsigned threads : {1u, 2u, 8u}) {
    PreparedTriad triad({n, gamma}, {AffinityKind::Close, threads}, 42, topology);
    const Measurement m = triad.run_once();
    const auto a = triad.a();
    const auto b = triad.b();
    const auto c = triad.c();
    for (std::size_t i = 0; i < n; ++i) {
      volatile double product = gamma * b[i];  // forces a rounded product, no fused multiply-add
      const double want = a[i] + product;
      mismatches += std::bit_cast<std::uint64_t>(c[i]) != std::bit_cast<std::uint64_t>(want);
    }
    if (first.empty()) {
      first.assign(c.begin(), c.end());
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        cross += std::bit_cast<std::uint64_t>(c[i]) != std::bit_cast<std::uint64_t>(first[i]);
      }
    }
    ratio_exact = ratio_exact && m.gflops / m.gbytes_per_s == 1.0 / 12.0;
  }
  return {mismatches == 0 && cross == 0 && ratio_exact,
          fmt::format("N=1e6 at 1/2/8 threads: {} element mismatches, {} cross-thread differences, ratio {}",
                      mismatches, cross, ratio_exact ? "exactly 1/12" : "not 1/12")};
}

// ---------------------------------------------------------------- 8

Verdict dgemm_correctness() {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<std::int64_t> dim(1, 64);
  std::uniform_real_distribution<double> unit;
  PortableDgemmBackend backend;
  double worst = 0.0;
  std::size_t elements = 0;
  for (int shape = 0; shape < 50; ++shape) {
    const std::int64_t n = dim(gen), m = dim(gen), k = dim(gen);
    const double alpha = shape % 5 == 0 ? 1.0 : 0.5 + unit(gen);
    const double beta = shape % 2 == 0 ? 0.0 : unit(gen);
    // Non-negative operands, as the benchmark fills them, so no element
    // suffers cancellation and a per-element relative bound is meaningful.
    std::vector<double> a(n * k), b(k * m), c(n * m), want(n * m);
    for (double& x : a) x = unit(gen);
    for (double& x : b) x = unit(gen);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = want[i] = unit(gen);
    backend.gemm({n, m, k, alpha, beta}, a, b, c);
    oracle::triple_loop_gemm(n, m, k, alpha, a, b, beta, want);
    for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, oracle::rel_err(c[i], want[i]));
    elements += c.size();
  }
  return {worst <= 1e-10, fmt::format("50 shapes, {} elements, worst relative error {:.3g}", elements, worst)};
}

// ---------------------------------------------------------------- 9

Verdict roofline_function() {
  std::size_t grid_bad = 0;
  double worst_ridge = 0.0;
  std::size_t points = 0;
  for (const char* name : {"e5-2650v4", "e5-2695v4", "gold-6132", "gold-6148"}) {
    const HardwareSpec spec = cli::load_hardware_spec(hw_path(name));
    std::vector<Ceiling> compute, bandwidth;
    for (int s = 1; s <= spec.sockets; ++s) {
      compute.push_back({fmt::format("C{}", s), theoretical_flops(spec, s)});
      bandwidth.push_back({fmt::format("B{}", s), theoretical_bandwidth(spec, s)});
    }
    const RooflineModel model = build_model(compute, bandwidth);
    const RooflineTable t = tabulate(model, 0.01, 100.0, 20);
    grid_bad += t.intensities.size() != 81 || t.intensities.front() != 0.01 || t.intensities.back() != 100.0;
    for (std::size_t r = 0; r < t.intensities.size(); ++r) {
      const double i = t.intensities[r];
      std::size_t col = 0;
      for (const Ceiling& c : model.compute) {
        for (const Ceiling& b : model.bandwidth) {
          grid_bad += t.values[r][col++] != std::min(b.value * i, c.value);
          ++points;
        }
      }
    }
    for (const RidgePoint& rp : model.ridges) {
      const auto find = [](const std::vector<Ceiling>& cs, const std::string& label) {
        return std::find_if(cs.begin(), cs.end(), [&](const Ceiling& c) { return c.label == label; })->value;
      };
      const double f = find(model.compute, rp.compute_label);
      const double b = find(model.bandwidth, rp.bandwidth_label);
      worst_ridge = std::max(worst_ridge, oracle::rel_err(b * rp.intensity, f));
    }
  }

  // Published single- and dual-socket DGEMM results with their percentages.
  // The percentages are taken against the published per-system peak times
  // the socket count.
  struct Row {
    const char* file;
    int table_sockets;
    int sockets;
    double measured;
    double percent;
  };
  const Row rows[] = {{"e5-2650v4", 2, 1, 408.71, 96.76},  {"e5-2650v4", 2, 2, 773.51, 91.56},
                      {"e5-2695v4", 2, 1, 593.06, 98.06},  {"e5-2695v4", 2, 2, 1112.08, 91.93},
                      {"gold-6132", 1, 1, 1015.68, 87.20}, {"gold-6132", 1, 2, 1750.24, 75.13},
                      {"gold-6148", 1, 1, 1422.24, 92.59}, {"gold-6148", 1, 2, 2407.33, 78.36}};
  double worst_pct = 0.0;
  for (const Row& r : rows) {
    const HardwareSpec spec = cli::load_hardware_spec(hw_path(r.file));
    const double peak = theoretical_flops(spec, r.table_sockets) * r.sockets;
    worst_pct = std::max(worst_pct, std::abs(utilization_percent(r.measured, peak) - r.percent));
  }
  const bool pass = grid_bad == 0 && worst_ridge <= 1e-12 && worst_pct <= 0.01;
  return {pass, fmt::format("{} grid values, {} off; ridge error {:.3g}; worst utilization gap {:.4f} points",
                            points, grid_bad, worst_ridge, worst_pct)};
}

// ---------------------------------------------------------------- 10

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "rooftune-accept-XXXXXX").string();
    path = mkdtemp(tmpl.data());
  }
  ~TempDir() { fs::remove_all(path); }
};

int cli_run(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run_cli(args, o, e, cli::CliContext{{ROOFTUNE_BIN}});
  if (out) *out = o.str();
  return code;
}

// Structural check of the archive layout; returns the first problem found.
std::string archive_schema_problem(const json& j) {
  const auto need = [](const json& o, const char* key, json::value_t type, bool nullable = false) -> std::string {
    if (!o.is_object() || !o.contains(key)) return std::string("missing ") + key;
    const json& v = o.at(key);
    if (nullable && v.is_null()) return "";
    const bool number = type == json::value_t::number_float;
    if (number ? !v.is_number() : v.type() != type) return std::string("wrong type for ") + key;
    return "";
  };
  using vt = json::value_t;
  for (auto [key, type] : std::vector<std::pair<const char*, vt>>{{"schema_version", vt::number_unsigned},
                                                                 {"tool", vt::object},
                                                                 {"started_at", vt::string},
                                                                 {"finished_at", vt::string},
                                                                 {"manifest", vt::object},
                                                                 {"results", vt::array},
                                                                 {"summary", vt::object}}) {
    if (auto p = need(j, key, type); !p.empty()) return p;
  }
  for (const json& r : j.at("results")) {
    for (auto [key, type, nullable] : std::vector<std::tuple<const char*, vt, bool>>{
             {"config", vt::object, false},       {"invocations", vt::array, false},
             {"score", vt::number_float, true},   {"best_invocation_mean", vt::number_float, true},
             {"observations", vt::number_unsigned, false}, {"failed", vt::boolean, false},
             {"outer_pruned", vt::boolean, false}}) {
      if (auto p = need(r, key, type, nullable); !p.empty()) return "result: " + p;
    }
    for (const json& inv : r.at("invocations")) {
      for (const char* key : {"count", "mean", "corrected_sum", "elapsed", "stop_reason"}) {
        if (!inv.contains(key)) return std::string("invocation: missing ") + key;
      }
    }
  }
  for (const char* key : {"mode", "best_config", "best_value", "configurations", "total_observations"}) {
    if (!j.at("summary").contains(key)) return std::string("summary: missing ") + key;
  }
  return "";
}

EvalOutcome random_outcome(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> reason(0, 4);
  std::uniform_int_distribution<std::uint64_t> count(0, 2000000);
  std::uniform_real_distribution<double> exp10(-300.0, 300.0);
  std::normal_distribution<double> normal;
  EvalOutcome o;
  o.stop_reason = static_cast<StopReason>(reason(gen));
  const std::uint64_t n = count(gen) % 5 == 0 ? count(gen) % 2 : count(gen);
  const double mean = n == 0 ? 0.0 : normal(gen) * std::pow(10.0, exp10(gen));
  const double sum = n < 2 ? 0.0 : std::abs(normal(gen)) * std::pow(10.0, exp10(gen));
  o.stats = OnlineStats::from_moments(n, mean, sum);
  o.elapsed_s = std::abs(normal(gen)) * 10.0;
  if (o.stop_reason == StopReason::ExternallyAborted) o.error = "kernel said \"no\"\n\tat line " + std::to_string(n);
  return o;
}

Verdict end_to_end() {
  TempDir dir;
  const auto p = [&](const std::string& name) { return (dir.path / name).string(); };
  std::vector<std::string> problems;
  const auto expect = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };

  for (const char* name : {"a1.json", "a2.json"}) {
    expect(cli_run({"tune", "--kernel", "synthetic", "--space", "demo5", "--mode", "cio", "--seed", "3", "--archive",
                    p(name), "-q"}) == 0,
           "tune failed");
  }
  const std::string a1 = slurp(p("a1.json"));
  const std::string a2 = slurp(p("a2.json"));
  json j1 = json::parse(a1);
  json j2 = json::parse(a2);
  expect(archive_schema_problem(j1).empty(), "archive schema: " + archive_schema_problem(j1));
  expect(cli::serialize_archive(cli::parse_archive(a1)) == a1, "archive does not re-serialize byte for byte");
  for (json* j : {&j1, &j2}) {
    j->erase("started_at");
    j->erase("finished_at");
    j->at("summary").erase("total_wall_time");
  }
  expect(j1 == j2, "repeated tune differs beyond timestamps");

  std::string r1, r2;
  expect(cli_run({"report", "--archive", p("a1.json"), "--csv", p("r1.csv")}, &r1) == 0, "report failed");
  expect(cli_run({"report", "--archive", p("a2.json"), "--csv", p("r2.csv")}, &r2) == 0, "report failed");
  expect(r1 == r2 && slurp(p("r1.csv")) == slurp(p("r2.csv")), "report output not stable");
  expect(slurp(p("r1.csv")).rfind("Technique,Mode,", 0) == 0, "report CSV header");

  for (const char* out : {"rl1", "rl2"}) {
    expect(cli_run({"roofline", "--hardware", hw_path("e5-2650v4"), "--theoretical-only", "--out", p(out)}) == 0,
           "roofline failed");
  }
  for (const char* f : {"roofline.csv", "points.csv", "roofline.svg", "utilization.txt"}) {
    const std::string x = slurp(dir.path / "rl1" / f);
    expect(!x.empty() && x == slurp(dir.path / "rl2" / f), std::string("roofline output not stable: ") + f);
  }
  const std::string csv = slurp(dir.path / "rl1" / "roofline.csv");
  expect(csv.rfind("intensity_flop_per_byte,", 0) == 0 && std::count(csv.begin(), csv.end(), '\n') == 82, "roofline CSV shape");
  expect(slurp(dir.path / "rl1" / "roofline.svg").find("<svg xmlns=") != std::string::npos, "roofline SVG");

  std::mt19937_64 gen(10);
  int lossy = 0;
  const auto pts = build_dgemm_space(DgemmSpaceKind::Reduced).enumerate();
  for (int i = 0; i < 1000; ++i) {
    const WorkerRecord rec{{KernelKind::Dgemm, pts[gen() % pts.size()]}, random_outcome(gen)};
    const std::string line = encode_worker_record(rec);
    lossy += !(decode_worker_record(line) == rec) || line.find('\n') != std::string::npos;
  }
  expect(lossy == 0, fmt::format("{} lossy worker round trips", lossy));

  if (problems.empty()) return {true, "tune, report and roofline stable; 1000 lossless worker round trips"};
  std::string detail;
  for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
  return {false, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "theoretical peaks", 1.0, theoretical_peaks},
      {2, "search-space cardinalities", 1.0, cardinalities},
      {3, "Welford equivalence", 10.0, welford},
      {4, "CI stop correctness", 5.0, ci_stop},
      {5, "argmax preservation", 120.0, argmax_preservation},
      {6, "pruning speedup", 120.0, pruning_speedup},
      {7, "TRIAD semantics", 10.0, triad_semantics},
      {8, "DGEMM backend correctness", 30.0, dgemm_correctness},
      {9, "roofline function", 1.0, roofline_function},
      {10, "end-to-end smoke", 60.0, end_to_end},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = v.pass && in_time;
    failed += !pass;
    std::cout << fmt::format("{} {:>2} {}: {} [{:.2f}s of {:.0f}s{}]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                             v.detail, secs, c.limit_s, in_time ? "" : ", over time")
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
