#include "rooftune/cli/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "rooftune/error.hpp"

namespace rooftune::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kMiB = 1024.0 * 1024.0;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

YAML::Node parse_yaml(const std::string& text, const std::string& what) {
  try {
    YAML::Node root = YAML::Load(text);
    if (root.IsNull()) return YAML::Node(YAML::NodeType::Map);
    if (!root.IsMap()) throw InputError(what + ": top level must be a mapping");
    return root;
  } catch (const YAML::Exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

// Typo protection: every key must be one we know.
void reject_unknown(const YAML::Node& node, const std::set<std::string>& known, const std::string& where) {
  if (!node.IsMap()) throw InputError(where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key)) throw InputError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& dst, const std::string& where) {
  const YAML::Node v = node[key];
  if (!v) return;
  try {
    dst = v.as<T>();
  } catch (const YAML::Exception&) {
    throw InputError(where + "." + key + ": bad value '" + YAML::Dump(v) + "'");
  }
}

template <typename T>
T require(const YAML::Node& node, const char* key, const std::string& where) {
  if (!node[key]) throw InputError(where + ": missing '" + key + "'");
  T out{};
  read(node, key, out, where);
  return out;
}

HardwareSpec spec_from_node(const YAML::Node& n, const std::string& where) {
  reject_unknown(n,
                 {"name", "cpu_freq_ghz", "cores", "avx_vector_bits", "avx_ops_per_cycle", "avx_units",
                  "sockets", "dram_freq_mhz", "channels", "bytes_per_transfer", "l3_mib"},
                 where);
  HardwareSpec s;
  s.name = require<std::string>(n, "name", where);
  s.cpu_freq_ghz = require<double>(n, "cpu_freq_ghz", where);
  s.cores = require<int>(n, "cores", where);
  s.avx_vector_bits = require<int>(n, "avx_vector_bits", where);
  read(n, "avx_ops_per_cycle", s.avx_ops_per_cycle, where);
  s.avx_units = require<int>(n, "avx_units", where);
  s.sockets = require<int>(n, "sockets", where);
  s.dram_freq_mhz = require<double>(n, "dram_freq_mhz", where);
  s.channels = require<int>(n, "channels", where);
  read(n, "bytes_per_transfer", s.bytes_per_transfer, where);
  s.l3_bytes = require<double>(n, "l3_mib", where) * kMiB;
  validate(s);
  return s;
}

void emit_spec(YAML::Emitter& e, const HardwareSpec& s) {
  e << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << s.name;
  e << YAML::Key << "cpu_freq_ghz" << YAML::Value << s.cpu_freq_ghz;
  e << YAML::Key << "cores" << YAML::Value << s.cores;
  e << YAML::Key << "avx_vector_bits" << YAML::Value << s.avx_vector_bits;
  e << YAML::Key << "avx_ops_per_cycle" << YAML::Value << s.avx_ops_per_cycle;
  e << YAML::Key << "avx_units" << YAML::Value << s.avx_units;
  e << YAML::Key << "sockets" << YAML::Value << s.sockets;
  e << YAML::Key << "dram_freq_mhz" << YAML::Value << s.dram_freq_mhz;
  e << YAML::Key << "channels" << YAML::Value << s.channels;
  e << YAML::Key << "bytes_per_transfer" << YAML::Value << s.bytes_per_transfer;
  e << YAML::Key << "l3_mib" << YAML::Value << s.l3_bytes / kMiB;
  e << YAML::EndMap;
}

}  // namespace

std::string RunManifest::effective_space() const {
  if (!space.empty()) return space;
  if (kernel == "dgemm") return "reduced";
  if (kernel == "triad") return "triad";
  return "demo5";
}

HardwareSpec hardware_spec_from_yaml_text(const std::string& text) {
  return spec_from_node(parse_yaml(text, "hardware spec"), "hardware spec");
}

HardwareSpec load_hardware_spec(const fs::path& path) {
  return spec_from_node(parse_yaml(read_file(path), path.string()), path.string());
}

std::string hardware_spec_to_yaml(const HardwareSpec& spec) {
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  emit_spec(e, spec);
  return std::string(e.c_str()) + "\n";
}

json hardware_spec_to_json(const HardwareSpec& s) {
  return {{"name", s.name},
          {"cpu_freq_ghz", s.cpu_freq_ghz},
          {"cores", s.cores},
          {"avx_vector_bits", s.avx_vector_bits},
          {"avx_ops_per_cycle", s.avx_ops_per_cycle},
          {"avx_units", s.avx_units},
          {"sockets", s.sockets},
          {"dram_freq_mhz", s.dram_freq_mhz},
          {"channels", s.channels},
          {"bytes_per_transfer", s.bytes_per_transfer},
          {"l3_bytes", s.l3_bytes}};
}

HardwareSpec hardware_spec_from_json(const json& j) {
  try {
    HardwareSpec s;
    s.name = j.at("name").get<std::string>();
    s.cpu_freq_ghz = j.at("cpu_freq_ghz").get<double>();
    s.cores = j.at("cores").get<int>();
    s.avx_vector_bits = j.at("avx_vector_bits").get<int>();
    s.avx_ops_per_cycle = j.at("avx_ops_per_cycle").get<int>();
    s.avx_units = j.at("avx_units").get<int>();
    s.sockets = j.at("sockets").get<int>();
    s.dram_freq_mhz = j.at("dram_freq_mhz").get<double>();
    s.channels = j.at("channels").get<int>();
    s.bytes_per_transfer = j.at("bytes_per_transfer").get<int>();
    s.l3_bytes = j.at("l3_bytes").get<double>();
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("hardware spec: ") + e.what());
  }
}

RunManifest manifest_from_yaml_text(const std::string& text, RunManifest m, const fs::path& relative_to) {
  const YAML::Node root = parse_yaml(text, "manifest");
  reject_unknown(root, {"hardware", "kernel", "space", "seed", "out", "sockets", "tuner", "kernel_options"},
                 "manifest");
  const std::string w = "manifest";

  if (const YAML::Node hw = root["hardware"]) {
    if (hw.IsScalar()) {
      fs::path p = hw.as<std::string>();
      if (p.is_relative() && !relative_to.empty()) p = relative_to / p;
      m.hardware = load_hardware_spec(p);
    } else {
      m.hardware = spec_from_node(hw, "manifest.hardware");
    }
  }
  read(root, "kernel", m.kernel, w);
  read(root, "space", m.space, w);
  read(root, "seed", m.seed, w);
  read(root, "out", m.out, w);
  read(root, "sockets", m.sockets, w);

  if (const YAML::Node t = root["tuner"]) {
    const std::string tw = "manifest.tuner";
    reject_unknown(t,
                   {"mode", "reverse", "invocations", "iterations", "max_time", "min_count", "ci_level", "ci_tol",
                    "ci_stop", "prune", "score", "isolation", "worker_grace"},
                   tw);
    read(t, "mode", m.mode, tw);
    read(t, "reverse", m.reverse, tw);
    read(t, "invocations", m.invocations, tw);
    if (t["iterations"]) {
      read(t, "iterations", m.budget.max_count, tw);
      m.iterations_explicit = true;
    }
    read(t, "max_time", m.budget.max_time_s, tw);
    read(t, "min_count", m.budget.min_count, tw);
    read(t, "ci_level", m.budget.ci_level, tw);
    read(t, "ci_tol", m.budget.ci_rel_tol, tw);
    read(t, "ci_stop", m.budget.enable_ci_stop, tw);
    read(t, "prune", m.budget.enable_prune_stop, tw);
    if (t["score"]) m.score = score_kind_from_string(t["score"].as<std::string>());
    if (t["isolation"]) m.isolation = isolation_from_string(t["isolation"].as<std::string>());
    read(t, "worker_grace", m.worker_grace_s, tw);
  }

  if (const YAML::Node k = root["kernel_options"]) {
    const std::string kw = "manifest.kernel_options";
    reject_unknown(k, {"backend", "affinity", "threads", "gamma", "triad_min_bytes", "triad_max_bytes"}, kw);
    read(k, "backend", m.backend, kw);
    if (k["affinity"]) m.affinity.kind = affinity_kind_from_string(k["affinity"].as<std::string>());
    read(k, "threads", m.affinity.threads, kw);
    read(k, "gamma", m.gamma, kw);
    read(k, "triad_min_bytes", m.triad_min_bytes, kw);
    read(k, "triad_max_bytes", m.triad_max_bytes, kw);
  }
  return m;
}

RunManifest load_manifest(const fs::path& path, RunManifest base) {
  return manifest_from_yaml_text(read_file(path), std::move(base), path.parent_path());
}

std::string manifest_to_yaml(const RunManifest& m) {
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;
  if (m.hardware) {
    e << YAML::Key << "hardware" << YAML::Value;
    emit_spec(e, *m.hardware);
  }
  e << YAML::Key << "kernel" << YAML::Value << m.kernel;
  e << YAML::Key << "space" << YAML::Value << m.effective_space();
  e << YAML::Key << "seed" << YAML::Value << m.seed;
  e << YAML::Key << "out" << YAML::Value << m.out;
  e << YAML::Key << "sockets" << YAML::Value << m.sockets;
  e << YAML::Key << "tuner" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "mode" << YAML::Value << m.mode;
  e << YAML::Key << "reverse" << YAML::Value << m.reverse;
  e << YAML::Key << "invocations" << YAML::Value << m.invocations;
  e << YAML::Key << "iterations" << YAML::Value << m.budget.max_count;
  e << YAML::Key << "max_time" << YAML::Value << m.budget.max_time_s;
  e << YAML::Key << "min_count" << YAML::Value << m.budget.min_count;
  e << YAML::Key << "ci_level" << YAML::Value << m.budget.ci_level;
  e << YAML::Key << "ci_tol" << YAML::Value << m.budget.ci_rel_tol;
  e << YAML::Key << "ci_stop" << YAML::Value << m.budget.enable_ci_stop;
  e << YAML::Key << "prune" << YAML::Value << m.budget.enable_prune_stop;
  e << YAML::Key << "score" << YAML::Value << std::string(to_string(m.score));
  e << YAML::Key << "isolation" << YAML::Value << std::string(to_string(m.isolation));
  e << YAML::Key << "worker_grace" << YAML::Value << m.worker_grace_s;
  e << YAML::EndMap;
  e << YAML::Key << "kernel_options" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "backend" << YAML::Value << m.backend;
  e << YAML::Key << "affinity" << YAML::Value << std::string(to_string(m.affinity.kind));
  e << YAML::Key << "threads" << YAML::Value << m.affinity.threads;
  e << YAML::Key << "gamma" << YAML::Value << m.gamma;
  e << YAML::Key << "triad_min_bytes" << YAML::Value << m.triad_min_bytes;
  e << YAML::Key << "triad_max_bytes" << YAML::Value << m.triad_max_bytes;
  e << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

json manifest_to_json(const RunManifest& m) {
  json j;
  j["hardware"] = m.hardware ? hardware_spec_to_json(*m.hardware) : json(nullptr);
  j["kernel"] = m.kernel;
  j["space"] = m.effective_space();
  j["seed"] = m.seed;
  j["out"] = m.out;
  j["sockets"] = m.sockets;
  j["tuner"] = {{"mode", m.mode},
                {"reverse", m.reverse},
                {"invocations", m.invocations},
                {"iterations", m.budget.max_count},
                {"max_time", m.budget.max_time_s},
                {"min_count", m.budget.min_count},
                {"ci_level", m.budget.ci_level},
                {"ci_tol", m.budget.ci_rel_tol},
                {"ci_stop", m.budget.enable_ci_stop},
                {"prune", m.budget.enable_prune_stop},
                {"score", to_string(m.score)},
                {"isolation", to_string(m.isolation)},
                {"worker_grace", m.worker_grace_s}};
  j["kernel_options"] = {{"backend", m.backend},
                         {"affinity", to_string(m.affinity.kind)},
                         {"threads", m.affinity.threads},
                         {"gamma", m.gamma},
                         {"triad_min_bytes", m.triad_min_bytes},
                         {"triad_max_bytes", m.triad_max_bytes}};
  return j;
}

RunManifest manifest_from_json(const json& j) {
  try {
    RunManifest m;
    if (!j.at("hardware").is_null()) m.hardware = hardware_spec_from_json(j.at("hardware"));
    m.kernel = j.at("kernel").get<std::string>();
    m.space = j.at("space").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.out = j.at("out").get<std::string>();
    m.sockets = j.at("sockets").get<int>();
    const json& t = j.at("tuner");
    m.mode = t.at("mode").get<std::string>();
    m.reverse = t.at("reverse").get<bool>();
    m.invocations = t.at("invocations").get<std::uint64_t>();
    m.budget.max_count = t.at("iterations").get<std::uint64_t>();
    m.iterations_explicit = true;
    m.budget.max_time_s = t.at("max_time").get<double>();
    m.budget.min_count = t.at("min_count").get<std::uint64_t>();
    m.budget.ci_level = t.at("ci_level").get<double>();
    m.budget.ci_rel_tol = t.at("ci_tol").get<double>();
    m.budget.enable_ci_stop = t.at("ci_stop").get<bool>();
    m.budget.enable_prune_stop = t.at("prune").get<bool>();
    m.score = score_kind_from_string(t.at("score").get<std::string>());
    m.isolation = isolation_from_string(t.at("isolation").get<std::string>());
    m.worker_grace_s = t.at("worker_grace").get<double>();
    const json& k = j.at("kernel_options");
    m.backend = k.at("backend").get<std::string>();
    m.affinity.kind = affinity_kind_from_string(k.at("affinity").get<std::string>());
    m.affinity.threads = k.at("threads").get<unsigned>();
    m.gamma = k.at("gamma").get<double>();
    m.triad_min_bytes = k.at("triad_min_bytes").get<std::uint64_t>();
    m.triad_max_bytes = k.at("triad_max_bytes").get<std::uint64_t>();
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest: ") + e.what());
  }
}

}  // namespace rooftune::cli
