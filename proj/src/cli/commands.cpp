#include "rooftune/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rooftune/cli/archive.hpp"
#include "rooftune/cli/manifest.hpp"
#include "rooftune/cli/report.hpp"
#include "rooftune/error.hpp"
#include "rooftune/kernels/dgemm.hpp"
#include "rooftune/kernels/triad.hpp"
#include "rooftune/search/subprocess.hpp"
#include "rooftune/search/wire.hpp"

namespace rooftune::cli {

namespace fs = std::filesystem;

std::string format_utilization(const std::string& label, double measured, double theoretical,
                               const std::string& unit) {
  return fmt::format("{}: {:.2f} of {:.6g} {} = {:.2f}%", label, measured, theoretical, unit,
                     utilization_percent(measured, theoretical));
}

std::string format_theoretical_peaks(const HardwareSpec& spec) {
  std::string out;
  for (int s = 1; s <= spec.sockets; ++s) {
    out += fmt::format("  compute S{}: {:.6g} GFLOP/s\n", s, theoretical_flops(spec, s));
  }
  for (int s = 1; s <= spec.sockets; ++s) {
    out += fmt::format("  DRAM S{}: {:.6g} GB/s\n", s, theoretical_bandwidth(spec, s));
  }
  return out;
}

namespace {

using Apply = std::function<void(RunManifest&)>;

// Registers a flag whose value, when given, is written into the manifest
// after the manifest file (if any) is loaded.
template <typename T>
CLI::Option* override_option(CLI::App* app, std::vector<Apply>& applies, const std::string& name,
                             const std::string& help, std::function<void(RunManifest&, const T&)> set) {
  auto value = std::make_shared<T>();
  CLI::Option* opt = app->add_option(name, *value, help);
  applies.push_back([opt, value, set](RunManifest& m) {
    if (opt->count() > 0) set(m, *value);
  });
  return opt;
}

CLI::Option* override_flag(CLI::App* app, std::vector<Apply>& applies, const std::string& name,
                           const std::string& help, std::function<void(RunManifest&)> set) {
  CLI::Option* opt = app->add_flag(name, help);
  applies.push_back([opt, set](RunManifest& m) {
    if (opt->count() > 0) set(m);
  });
  return opt;
}

SearchSpace build_space(KernelKind kind, const std::string& name, const RunManifest& m) {
  switch (kind) {
    case KernelKind::Dgemm:
      if (name == "initial") return build_dgemm_space(DgemmSpaceKind::Initial);
      if (name == "reduced") return build_dgemm_space(DgemmSpaceKind::Reduced);
      break;
    case KernelKind::Triad:
      if (name == "triad") return build_triad_space(m.triad_min_bytes, m.triad_max_bytes);
      break;
    case KernelKind::Synthetic:
      if (auto suite = find_synthetic_suite(name)) return suite->space;
      break;
  }
  throw InputError(fmt::format("space '{}' is not available for kernel {}", name, to_string(kind)));
}

OptimizationMode resolve_mode(const RunManifest& m) {
  const OptimizationMode probe = parse_mode(m.mode);
  if (probe.fixed_iterations && !probe.single && !m.iterations_explicit) {
    throw InputError("mode '" + m.mode + "' needs an explicit --iterations count");
  }
  OptimizationMode mode = parse_mode(m.mode, m.budget.max_count);
  if (m.reverse && !mode.reverse) mode = with_reverse(mode);
  return mode;
}

std::string point_description(KernelKind kind, const Point& p) {
  if (kind == KernelKind::Triad) {
    return fmt::format("{} ({} bytes)", p.label(), triad_working_set_bytes(static_cast<std::size_t>(p.at("length"))));
  }
  return p.label();
}

std::string pretty_value(double v) { return std::isfinite(v) ? fmt::format("{:.2f}", v) : "failed"; }

// ---------------------------------------------------------------- tune

struct TuneArgs {
  std::string manifest_path;
  std::string archive_path;
  bool dry_run = false;
  bool quiet = false;
  std::vector<Apply> applies;
};

void add_tune(CLI::App& app, TuneArgs& a) {
  CLI::App* sub = app.add_subcommand("tune", "Run an exhaustive tuning sweep and write a results archive");
  auto& ap = a.applies;
  sub->add_option("--manifest", a.manifest_path, "YAML run manifest; flags override its values")
      ->check(CLI::ExistingFile);
  sub->add_option("--archive", a.archive_path, "Archive path (default <out>/<kernel>-<space>-<mode>-s<sockets>.json)");
  sub->add_flag("--dry-run", a.dry_run, "List the configurations and exit");
  sub->add_flag("-q,--quiet", a.quiet, "No per-configuration progress on stderr");

  override_option<std::string>(sub, ap, "--kernel", "dgemm, triad or synthetic",
                               [](RunManifest& m, const std::string& v) { m.kernel = v; });
  override_option<std::string>(sub, ap, "--space", "initial, reduced, triad, demo5, demo96 or const5",
                               [](RunManifest& m, const std::string& v) { m.space = v; });
  override_option<std::string>(sub, ap, "--mode", "default, single, hand-time, hand-acc, c, ci, cir, cio, cior",
                               [](RunManifest& m, const std::string& v) { m.mode = v; });
  override_flag(sub, ap, "--reverse", "Enumerate the space back to front", [](RunManifest& m) { m.reverse = true; });
  override_option<double>(sub, ap, "-t,--max-time", "Seconds per invocation",
                          [](RunManifest& m, const double& v) { m.budget.max_time_s = v; });
  override_option<std::uint64_t>(sub, ap, "--iterations,--max-count", "Iteration cap per invocation",
                                 [](RunManifest& m, const std::uint64_t& v) {
                                   m.budget.max_count = v;
                                   m.iterations_explicit = true;
                                 });
  override_option<std::uint64_t>(sub, ap, "--min-count", "Observations before pruning may fire",
                                 [](RunManifest& m, const std::uint64_t& v) { m.budget.min_count = v; });
  override_option<double>(sub, ap, "--ci-level", "Confidence level",
                          [](RunManifest& m, const double& v) { m.budget.ci_level = v; });
  override_option<double>(sub, ap, "--ci-tol", "Relative CI half-width target",
                          [](RunManifest& m, const double& v) { m.budget.ci_rel_tol = v; });
  override_flag(sub, ap, "--no-ci-stop", "Disable the confidence stop",
                [](RunManifest& m) { m.budget.enable_ci_stop = false; });
  override_flag(sub, ap, "--no-prune", "Disable pruning against the incumbent",
                [](RunManifest& m) { m.budget.enable_prune_stop = false; });
  override_option<std::uint64_t>(sub, ap, "--invocations", "Invocations per configuration",
                                 [](RunManifest& m, const std::uint64_t& v) { m.invocations = v; });
  override_option<std::string>(sub, ap, "--score", "best or mean of invocation means",
                               [](RunManifest& m, const std::string& v) { m.score = score_kind_from_string(v); });
  override_option<std::string>(sub, ap, "--isolation", "in_process or subprocess",
                               [](RunManifest& m, const std::string& v) { m.isolation = isolation_from_string(v); });
  override_option<double>(sub, ap, "--worker-grace", "Seconds a worker may exceed max-time",
                          [](RunManifest& m, const double& v) { m.worker_grace_s = v; });
  override_option<std::string>(sub, ap, "--backend", "DGEMM backend: auto, cblas or portable",
                               [](RunManifest& m, const std::string& v) { m.backend = v; });
  override_option<std::string>(sub, ap, "--affinity", "close or spread", [](RunManifest& m, const std::string& v) {
    m.affinity.kind = affinity_kind_from_string(v);
  });
  override_option<unsigned>(sub, ap, "--threads", "Kernel threads",
                            [](RunManifest& m, const unsigned& v) { m.affinity.threads = v; });
  override_option<double>(sub, ap, "--gamma", "TRIAD scalar", [](RunManifest& m, const double& v) { m.gamma = v; });
  override_option<std::uint64_t>(sub, ap, "--triad-min-bytes", "Smallest TRIAD working set",
                                 [](RunManifest& m, const std::uint64_t& v) { m.triad_min_bytes = v; });
  override_option<std::uint64_t>(sub, ap, "--triad-max-bytes", "Largest TRIAD working set",
                                 [](RunManifest& m, const std::uint64_t& v) { m.triad_max_bytes = v; });
  override_option<std::uint64_t>(sub, ap, "--seed", "Seed for inputs and synthetic noise",
                                 [](RunManifest& m, const std::uint64_t& v) { m.seed = v; });
  override_option<std::string>(sub, ap, "--out", "Output directory",
                               [](RunManifest& m, const std::string& v) { m.out = v; });
  override_option<int>(sub, ap, "--sockets", "Socket count this run represents",
                       [](RunManifest& m, const int& v) { m.sockets = v; });
  override_option<std::string>(sub, ap, "--hardware", "Hardware spec YAML echoed into the archive",
                               [](RunManifest& m, const std::string& v) { m.hardware = load_hardware_spec(v); });
}

int cmd_tune(const TuneArgs& a, std::ostream& out, std::ostream& err, const CliContext& ctx) {
  RunManifest m = a.manifest_path.empty() ? RunManifest{} : load_manifest(a.manifest_path);
  for (const Apply& apply : a.applies) apply(m);

  validate(m.budget);
  const KernelKind kind = kernel_kind_from_string(m.kernel);
  const std::string space_name = m.effective_space();
  m.space = space_name;
  const SearchSpace space = build_space(kind, space_name, m);
  const OptimizationMode mode = resolve_mode(m);
  if (m.invocations < 1) throw InputError("--invocations must be at least 1");
  if (m.sockets < 1) throw InputError("--sockets must be at least 1");
  if (m.affinity.threads < 1) throw InputError("--threads must be at least 1");
  if (!(m.worker_grace_s >= 0.0)) throw InputError("--worker-grace must be non-negative");
  if (m.hardware && m.sockets > m.hardware->sockets) {
    throw InputError(fmt::format("--sockets {} exceeds the {} sockets of '{}'", m.sockets, m.hardware->sockets,
                                 m.hardware->name));
  }

  if (a.dry_run) {
    std::vector<Point> points = space.enumerate();
    if (mode.reverse) std::reverse(points.begin(), points.end());
    for (const Point& p : points) out << point_description(kind, p) << "\n";
    out << points.size() << " configurations\n";
    return kExitOk;
  }

  const KernelOptions options{space_name, m.backend, m.affinity, m.seed, m.gamma};
  if (kind == KernelKind::Dgemm) (void)make_dgemm_backend(m.backend, m.affinity.threads);

  std::unique_ptr<InvocationRunner> runner;
  if (m.isolation == Isolation::Subprocess) {
    std::vector<std::string> cmd = ctx.self_command;
    if (cmd.empty()) cmd.push_back(current_executable_path());
    const auto grace = std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(m.worker_grace_s * 1000.0)));
    runner = std::make_unique<SubprocessRunner>(cmd, options, grace);
  } else {
    runner = std::make_unique<InProcessRunner>(make_source_factory(options));
  }

  const std::string unit(metric_unit(kind));
  const std::size_t total = space.cardinality();
  const std::size_t width = std::to_string(total).size();
  std::size_t done = 0;
  SearchSettings settings{mode, m.budget, m.invocations, m.score, {}};
  if (!a.quiet) {
    settings.on_result = [&](const ConfigResult& r) {
      ++done;
      std::string note = r.failed ? " failed: " + r.error : (r.outer_pruned ? " (outer pruned)" : "");
      err << fmt::format("[{:>{}}/{}] {}: {} {} obs={}{}\n", done, width, total, r.config.label(),
                         pretty_value(r.score), unit, r.observations(), note);
    };
  }

  ResultsArchive archive;
  archive.started_at = utc_timestamp();
  archive.manifest = m;
  archive.result = exhaustive_search(space, kind, settings, *runner);
  archive.finished_at = utc_timestamp();

  const fs::path path = a.archive_path.empty()
                            ? fs::path(m.out) / fmt::format("{}-{}-{}-s{}.json", m.kernel, space_name,
                                                            archive.result.mode, m.sockets)
                            : fs::path(a.archive_path);
  save_archive(path, archive);

  const TuningResult& t = archive.result;
  out << fmt::format("technique: {} ({})\n", technique_name(t.mode), t.mode);
  out << "best: " << (t.best_config ? t.best_config->label() : "none") << "\n";
  out << fmt::format("value: {} {}\n", pretty_value(t.best_value), unit);
  out << fmt::format("time: {:.3f} s wall, {:.3f} s measured\n", t.total_wall_time_s, t.total_observation_time_s);
  out << "observations: " << t.total_observations << "\n";
  out << "archive: " << path.string() << "\n";
  if (!t.best_config) {
    err << "error: every configuration failed\n";
    return kExitKernel;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- worker

struct WorkerArgs {
  std::string kernel;
  std::string space;
  std::uint64_t invocation = 0;
  std::uint64_t seed = 1;
  Budget budget;
  std::optional<double> best;
  double best_value = 0.0;
  CLI::Option* best_opt = nullptr;
  std::string backend = "auto";
  unsigned threads = 1;
  std::string affinity = "close";
  double gamma = 3.0;
  bool no_ci_stop = false;
  bool no_prune = false;
  std::vector<std::string> params;
};

void add_worker(CLI::App& app, WorkerArgs& w) {
  CLI::App* sub = app.add_subcommand("worker", "Run one invocation and print one JSON result line");
  sub->add_option("--kernel", w.kernel, "dgemm, triad or synthetic")->required();
  sub->add_option("--space", w.space, "Space name (selects the synthetic landscape)");
  sub->add_option("--invocation", w.invocation, "Invocation index");
  sub->add_option("--seed", w.seed, "Seed");
  sub->add_option("-t,--max-time", w.budget.max_time_s, "Seconds");
  sub->add_option("--iterations,--max-count", w.budget.max_count, "Iteration cap");
  sub->add_option("--min-count", w.budget.min_count, "Minimum observations before pruning");
  sub->add_option("--ci-level", w.budget.ci_level, "Confidence level");
  sub->add_option("--ci-tol", w.budget.ci_rel_tol, "Relative CI half-width target");
  sub->add_flag("--no-ci-stop", w.no_ci_stop, "Disable the confidence stop");
  sub->add_flag("--no-prune", w.no_prune, "Disable pruning");
  w.best_opt = sub->add_option("--best", w.best_value, "Incumbent score");
  sub->add_option("--backend", w.backend, "DGEMM backend");
  sub->add_option("--threads", w.threads, "Kernel threads");
  sub->add_option("--affinity", w.affinity, "close or spread");
  sub->add_option("--gamma", w.gamma, "TRIAD scalar");
  sub->add_option("--param", w.params, "Coordinate as name=value, in axis order")->required();
}

Point parse_params(const std::vector<std::string>& params) {
  Point p;
  for (const std::string& s : params) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects name=value, got '" + s + "'");
    std::int64_t v = 0;
    const char* first = s.data() + eq + 1;
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) throw InputError("--param value is not an integer: '" + s + "'");
    p.coords.emplace_back(s.substr(0, eq), v);
  }
  return p;
}

int cmd_worker(WorkerArgs& w, std::ostream& out, std::ostream& err) {
  if (w.no_ci_stop) w.budget.enable_ci_stop = false;
  if (w.no_prune) w.budget.enable_prune_stop = false;
  if (w.best_opt->count() > 0) w.best = w.best_value;
  validate(w.budget);
  const KernelConfig config{kernel_kind_from_string(w.kernel), parse_params(w.params)};
  if (w.threads < 1) throw InputError("--threads must be at least 1");
  const KernelOptions options{w.space, w.backend, {affinity_kind_from_string(w.affinity), w.threads}, w.seed, w.gamma};

  ObservationSource source;
  try {
    source = make_source_factory(options)(config, w.invocation);
  } catch (const InputError&) {
    throw;
  } catch (const EnvironmentError& e) {
    out << encode_worker_error(e.what()) << "\n";
    err << "error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const std::exception& e) {
    out << encode_worker_error(e.what()) << "\n";
    err << "error: " << e.what() << "\n";
    return kExitKernel;
  }
  EvalOutcome outcome = evaluate(source, w.budget, w.best);
  out << encode_worker_record({config, outcome}) << "\n";
  if (outcome.stop_reason == StopReason::ExternallyAborted) {
    err << "error: " << outcome.error << "\n";
    return kExitKernel;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- roofline

struct RooflineArgs {
  std::string hardware;
  std::vector<std::string> archives;
  bool theoretical_only = false;
  bool detect = false;
  std::string out = "roofline";
  double i_min = 0.01;
  double i_max = 100.0;
  int samples_per_decade = 20;
};

void add_roofline(CLI::App& app, RooflineArgs& r) {
  CLI::App* sub = app.add_subcommand("roofline", "Build the roofline model from a hardware spec and archives");
  sub->add_option("--hardware", r.hardware, "Hardware spec YAML")->check(CLI::ExistingFile);
  sub->add_option("--archive", r.archives, "Results archive (repeatable)")->check(CLI::ExistingFile);
  sub->add_flag("--theoretical-only", r.theoretical_only, "Only the vendor peaks; archives not required");
  sub->add_flag("--detect", r.detect, "Print a hardware spec pre-filled from this machine and exit");
  sub->add_option("--out", r.out, "Output directory");
  sub->add_option("--i-min", r.i_min, "Smallest intensity on the grid (FLOP/byte)");
  sub->add_option("--i-max", r.i_max, "Largest intensity on the grid (FLOP/byte)");
  sub->add_option("--samples-per-decade", r.samples_per_decade, "Grid density");
}

std::string read_first_line_with(const char* path, std::string_view key) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        std::string v = line.substr(colon + 1);
        v.erase(0, v.find_first_not_of(" \t"));
        return v;
      }
    }
  }
  return {};
}

std::string detected_spec_yaml() {
  const CpuTopology topo = CpuTopology::detect();
  const std::size_t sockets = std::max<std::size_t>(1, topo.sockets.size());
  const std::size_t per_socket = topo.cpu_count() / sockets;
  const std::string flags = " " + read_first_line_with("/proc/cpuinfo", "flags") + " ";
  const int bits = flags.find(" avx512f ") != std::string::npos ? 512
                   : flags.find(" avx2 ") != std::string::npos ? 256
                   : flags.find(" avx ") != std::string::npos  ? 256
                                                                 : 128;
  double l3_mib = 0.0;
  {
    std::ifstream in("/sys/devices/system/cpu/cpu0/cache/index3/size");
    std::string s;
    if (in >> s && !s.empty()) {
      const double v = std::strtod(s.c_str(), nullptr);
      l3_mib = s.back() == 'K' ? v / 1024.0 : (s.back() == 'M' ? v : v / (1024.0 * 1024.0));
    }
  }
  std::string name = read_first_line_with("/proc/cpuinfo", "model name");
  if (name.empty()) name = "unknown";
  std::string y = "# Pre-filled from this machine. Values marked 'fill in' are not visible to the OS;\n"
                  "# check every value against the vendor sheet before use.\n";
  y += fmt::format("name: \"{}\"\n", name);
  y += "cpu_freq_ghz: 0      # fill in: base frequency\n";
  y += fmt::format("cores: {}          # logical CPUs per socket seen by the OS; use physical cores\n", per_socket);
  y += fmt::format("avx_vector_bits: {}\n", bits);
  y += "avx_ops_per_cycle: 2\n";
  y += "avx_units: 0         # fill in: FMA units per core\n";
  y += fmt::format("sockets: {}\n", sockets);
  y += "dram_freq_mhz: 0     # fill in: DIMM transfer rate\n";
  y += "channels: 0          # fill in: memory channels per socket\n";
  y += "bytes_per_transfer: 8\n";
  y += fmt::format("l3_mib: {:.6g}\n", l3_mib);
  return y;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
}

int cmd_roofline(const RooflineArgs& r, std::ostream& out) {
  if (r.detect) {
    out << detected_spec_yaml();
    return kExitOk;
  }
  if (r.hardware.empty()) throw InputError("roofline needs --hardware");
  if (r.archives.empty() && !r.theoretical_only) {
    throw InputError("roofline needs at least one --archive (or --theoretical-only)");
  }
  const HardwareSpec spec = load_hardware_spec(r.hardware);

  std::vector<Ceiling> compute;
  std::vector<Ceiling> bandwidth;
  for (int s = 1; s <= spec.sockets; ++s) {
    compute.push_back({fmt::format("Theoretical S{}", s), theoretical_flops(spec, s)});
    bandwidth.push_back({fmt::format("Theoretical DRAM S{}", s), theoretical_bandwidth(spec, s)});
  }

  std::string report = "Hardware: " + spec.name + "\nTheoretical peaks\n" + format_theoretical_peaks(spec);
  std::vector<MeasuredPoint> points;
  std::vector<std::string> utilization;

  if (!r.theoretical_only) {
    std::map<int, std::pair<double, KernelConfig>> dgemm_best;
    std::map<std::pair<int, MemoryLevel>, std::pair<double, KernelConfig>> triad_best;
    for (const std::string& file : r.archives) {
      const ResultsArchive a = load_archive(file);
      const int s = a.manifest.sockets;
      if (a.manifest.hardware && a.manifest.hardware->name != spec.name) {
        throw ValidationError(fmt::format("{} was measured on '{}', not '{}'", file, a.manifest.hardware->name, spec.name));
      }
      if (s < 1 || s > spec.sockets) {
        throw ValidationError(fmt::format("{} uses {} sockets; '{}' has {}", file, s, spec.name, spec.sockets));
      }
      const KernelKind kind = kernel_kind_from_string(a.manifest.kernel);
      if (kind == KernelKind::Synthetic) throw ValidationError(file + " holds a synthetic run, not a hardware measurement");
      for (const ConfigResult& c : a.result.results) {
        if (c.failed) continue;
        if (kind == KernelKind::Dgemm) {
          auto& slot = dgemm_best[s];
          if (c.score > slot.first || slot.second.point.coords.empty()) slot = {c.score, c.config};
        } else {
          const double ws = static_cast<double>(triad_working_set_bytes(static_cast<std::size_t>(c.config.point.at("length"))));
          const MemoryLevel level = classify_working_set(ws, spec, s);
          if (level == MemoryLevel::Transition) continue;
          auto& slot = triad_best[{s, level}];
          if (c.score > slot.first || slot.second.point.coords.empty()) slot = {c.score, c.config};
        }
      }
    }
    for (const auto& [s, best] : dgemm_best) {
      const DgemmConfig d = to_dgemm_config(best.second.point);
      const double flops = static_cast<double>(dgemm_flop_count(d));
      const double bytes = 8.0 * static_cast<double>(d.m * d.k + d.k * d.n + d.m * d.n);
      compute.push_back({fmt::format("DGEMM S{}", s), best.first});
      points.push_back({fmt::format("DGEMM S{} {}", s, best.second.label()), operational_intensity(flops, bytes), best.first});
      utilization.push_back(format_utilization(fmt::format("DGEMM S{}", s), best.first, theoretical_flops(spec, s), "GFLOP/s"));
    }
    for (const auto& [key, best] : triad_best) {
      const auto [s, level] = key;
      const std::string name = fmt::format("{} S{}", level == MemoryLevel::L3 ? "L3" : "DRAM", s);
      bandwidth.push_back({name, best.first});
      points.push_back({fmt::format("TRIAD {} {}", name, best.second.label()), 1.0 / 12.0, best.first / 12.0});
      if (level == MemoryLevel::Dram) {
        utilization.push_back(format_utilization(name, best.first, theoretical_bandwidth(spec, s), "GB/s"));
      } else {
        utilization.push_back(fmt::format("{}: {:.2f} GB/s (no theoretical peak)", name, best.first));
      }
    }
  }
  if (!utilization.empty()) {
    report += "Utilization\n";
    for (const auto& u : utilization) report += "  " + u + "\n";
  }

  const RooflineModel model = build_model(compute, bandwidth);
  const fs::path dir(r.out);
  fs::create_directories(dir);
  write_text(dir / "roofline.csv", to_csv(tabulate(model, r.i_min, r.i_max, r.samples_per_decade)));
  write_text(dir / "points.csv", measured_points_csv(points));
  write_text(dir / "roofline.svg", render_svg(model, points, r.i_min, r.i_max));
  write_text(dir / "utilization.txt", report);
  out << report;
  out << "wrote " << (dir / "roofline.csv").string() << ", points.csv, roofline.svg, utilization.txt\n";
  return kExitOk;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> archives;
  std::string baseline;
  std::string csv;
  std::string time_basis = "auto";
};

void add_report(CLI::App& app, ReportArgs& r) {
  CLI::App* sub = app.add_subcommand("report", "Compare tuning runs across optimization modes");
  sub->add_option("--archive", r.archives, "Results archive (repeatable)")->check(CLI::ExistingFile);
  sub->add_option("--baseline", r.baseline, "Archive whose row is the speedup reference")->check(CLI::ExistingFile);
  sub->add_option("--csv", r.csv, "Also write the table as CSV");
  sub->add_option("--time-basis", r.time_basis, "auto, wall or observed (summed kernel time)");
}

int cmd_report(const ReportArgs& r, std::ostream& out, std::ostream& err) {
  std::vector<std::string> files = r.archives;
  std::optional<std::size_t> baseline;
  if (!r.baseline.empty()) {
    const auto it = std::find(files.begin(), files.end(), r.baseline);
    if (it == files.end()) {
      files.insert(files.begin(), r.baseline);
      baseline = 0;
    } else {
      baseline = static_cast<std::size_t>(it - files.begin());
    }
  }
  if (files.empty()) throw InputError("report needs at least one --archive");
  std::vector<ResultsArchive> archives;
  for (const auto& f : files) archives.push_back(load_archive(f));
  const ComparisonReport rep = build_report(archives, baseline, time_basis_from_string(r.time_basis));
  for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
  out << render_text(rep);
  if (!r.csv.empty()) {
    const fs::path p(r.csv);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_text(p, render_csv(rep));
  }
  return kExitOk;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EnvironmentError& e) {
    err << "environment error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const KernelError& e) {
    err << "kernel error: " << e.what() << "\n";
    return kExitKernel;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitKernel;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliContext& context) {
  CLI::App app{"Autotuned roofline benchmarking", std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  TuneArgs tune;
  WorkerArgs worker;
  RooflineArgs roofline;
  ReportArgs report;
  add_tune(app, tune);
  add_worker(app, worker);
  add_roofline(app, roofline);
  add_report(app, report);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  return guarded(err, [&]() -> int {
    if (app.got_subcommand("tune")) return cmd_tune(tune, out, err, context);
    if (app.got_subcommand("worker")) return cmd_worker(worker, out, err);
    if (app.got_subcommand("roofline")) return cmd_roofline(roofline, out);
    return cmd_report(report, out, err);
  });
}

}  // namespace rooftune::cli
