#include "rooftune/search/runner.hpp"

#include <exception>
#include <memory>
#include <sstream>

#include "rooftune/error.hpp"
#include "rooftune/search/subprocess.hpp"
#include "rooftune/search/wire.hpp"

namespace rooftune {

std::string_view to_string(Isolation i) {
  return i == Isolation::InProcess ? "in_process" : "subprocess";
}

Isolation isolation_from_string(std::string_view s) {
  if (s == "in_process" || s == "in-process") return Isolation::InProcess;
  if (s == "subprocess") return Isolation::Subprocess;
  throw InputError("unknown isolation '" + std::string(s) + "' (expected in_process|subprocess)");
}

SourceFactory make_source_factory(const KernelOptions& options) {
  std::shared_ptr<DgemmBackend> backend;
  std::optional<SyntheticSuite> suite;
  auto topology = std::make_shared<CpuTopology>(CpuTopology::detect());
  return [options, backend, suite, topology](const KernelConfig& config,
                                             std::uint64_t invocation) mutable -> ObservationSource {
    switch (config.kind) {
      case KernelKind::Dgemm: {
        if (!backend) backend = make_dgemm_backend(options.backend, options.affinity.threads);
        auto prepared = std::make_shared<PreparedDgemm>(to_dgemm_config(config.point), options.seed, *backend);
        // The backend outlives the prepared state through this capture.
        return [prepared, backend] { return prepared->run_once(); };
      }
      case KernelKind::Triad: {
        auto prepared = std::make_shared<PreparedTriad>(to_triad_config(config.point, options.triad_gamma),
                                                        options.affinity, options.seed, *topology);
        return [prepared] { return prepared->run_once(); };
      }
      case KernelKind::Synthetic: {
        if (!suite) suite = find_synthetic_suite(options.space);
        if (!suite) throw InputError("unknown synthetic space '" + options.space + "'");
        auto source = std::make_shared<SyntheticSource>(suite->model(config.point), options.seed, invocation);
        return [source] { return source->next(); };
      }
    }
    throw InputError("unsupported kernel");
  };
}

EvalOutcome InProcessRunner::run(const KernelConfig& config, std::uint64_t invocation,
                                 const Budget& budget, std::optional<double> best) {
  ObservationSource source;
  try {
    source = factory_(config, invocation);
  } catch (const EnvironmentError&) {
    throw;
  } catch (const std::exception& e) {
    EvalOutcome aborted;
    aborted.stop_reason = StopReason::ExternallyAborted;
    aborted.error = e.what();
    return aborted;
  }
  return evaluate(source, budget, best);
}

SubprocessRunner::SubprocessRunner(std::vector<std::string> command, KernelOptions options,
                                   std::chrono::milliseconds grace)
    : command_(std::move(command)), options_(std::move(options)), grace_(grace) {
  if (command_.empty()) throw InputError("subprocess runner needs a command");
}

EvalOutcome SubprocessRunner::run(const KernelConfig& config, std::uint64_t invocation,
                                  const Budget& budget, std::optional<double> best) {
  validate(budget);
  std::vector<std::string> argv = command_;
  const auto args = worker_arguments({config, invocation, budget, best, options_});
  argv.insert(argv.end(), args.begin(), args.end());

  const auto timeout = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::duration<double>(budget.max_time_s)) + grace_;
  const ProcessResult proc = run_process(argv, affinity_environment(options_.affinity), timeout);

  EvalOutcome aborted;
  aborted.stop_reason = StopReason::ExternallyAborted;
  if (proc.timed_out) {
    aborted.error = "worker timed out after " + std::to_string(timeout.count()) + " ms";
    return aborted;
  }
  if (proc.term_signal != 0) {
    aborted.error = "worker killed by signal " + std::to_string(proc.term_signal);
    return aborted;
  }

  std::string line;
  {
    std::istringstream lines(proc.out);
    std::getline(lines, line);
  }
  try {
    WorkerRecord record = decode_worker_record(line);
    // A worker whose kernel failed mid-invocation still reports what it measured.
    if (record.outcome.stop_reason == StopReason::ExternallyAborted) return record.outcome;
    if (proc.exit_code != 0) {
      aborted.error = "worker exited with status " + std::to_string(proc.exit_code);
      return aborted;
    }
    return record.outcome;
  } catch (const std::exception& e) {
    aborted.error = "worker exited with status " + std::to_string(proc.exit_code) + ": " + e.what();
    if (!proc.err.empty()) aborted.error += " (" + proc.err.substr(0, 200) + ")";
    return aborted;
  }
}

EvalOutcome run_invocation(const KernelConfig& config, std::uint64_t invocation, const Budget& budget,
                           std::optional<double> best, Isolation isolation,
                           const KernelOptions& options) {
  if (isolation == Isolation::InProcess) {
    InProcessRunner runner(make_source_factory(options));
    return runner.run(config, invocation, budget, best);
  }
  SubprocessRunner runner({current_executable_path()}, options);
  return runner.run(config, invocation, budget, best);
}

}  // namespace rooftune
