// Copyright 2026 The insitu developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "insitu/spec_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace insitu {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

struct RawEntry {
  std::string value;
  int line = 0;
  bool consumed = false;
};

// Keys are addressed as "section.key"; top-level keys use the bare name.
struct RawSpec {
  std::map<std::string, RawEntry> entries;

  const RawEntry* find(const std::string& path) {
    auto it = entries.find(path);
    if (it == entries.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }
};

RawSpec tokenize(const std::string& text) {
  RawSpec raw;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw SpecError("line " + std::to_string(line_no) +
                        ": malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw SpecError("line " + std::to_string(line_no) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SpecError("line " + std::to_string(line_no) +
                      ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw SpecError("line " + std::to_string(line_no) + ": empty key");
    const std::string path = section.empty() ? key : section + "." + key;
    if (raw.entries.count(path))
      throw SpecError(path + ": duplicate key (line " + std::to_string(line_no) + ")");
    raw.entries[path] = RawEntry{value, line_no, false};
  }
  return raw;
}

[[noreturn]] void type_error(const std::string& path, const std::string& want,
                             const std::string& got) {
  throw SpecError(path + ": expected " + want + ", got '" + got + "'");
}

double parse_double(const std::string& path, const std::string& v) {
  std::size_t pos = 0;
  double out = 0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    type_error(path, "a number", v);
  }
  if (pos != v.size()) type_error(path, "a number", v);
  return out;
}

// Gate times accept plain numbers plus the "pi" / "<x>pi" shorthand.
double parse_time(const std::string& path, const std::string& v) {
  if (v.size() >= 2 && v.substr(v.size() - 2) == "pi") {
    const std::string head = trim(v.substr(0, v.size() - 2));
    if (head.empty()) return kPi;
    return parse_double(path, head) * kPi;
  }
  return parse_double(path, v);
}

long parse_long(const std::string& path, const std::string& v) {
  std::size_t pos = 0;
  long out = 0;
  try {
    out = std::stol(v, &pos);
  } catch (const std::exception&) {
    type_error(path, "an integer", v);
  }
  if (pos != v.size()) type_error(path, "an integer", v);
  return out;
}

std::uint64_t parse_u64(const std::string& path, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    type_error(path, "a non-negative integer", v);
  }
  if (pos != v.size()) type_error(path, "a non-negative integer", v);
  return out;
}

std::vector<double> parse_double_list(const std::string& path,
                                      const std::string& v) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) type_error(path, "a comma-separated number list", v);
    out.push_back(parse_double(path, item));
  }
  if (out.empty()) type_error(path, "a comma-separated number list", v);
  return out;
}

template <typename T>
T parse_enum(const std::string& path, const std::string& v,
             const std::vector<std::pair<std::string, T>>& table) {
  for (const auto& [name, val] : table)
    if (v == name) return val;
  std::string options;
  for (const auto& [name, val] : table) {
    if (!options.empty()) options += "|";
    options += name;
  }
  type_error(path, options, v);
}

const std::vector<std::pair<std::string, ExperimentKind>> kKinds = {
    {"fidelity_trace", ExperimentKind::fidelity_trace},
    {"topology_table", ExperimentKind::topology_table},
    {"nupds_scaling", ExperimentKind::nupds_scaling},
    {"anum_scaling", ExperimentKind::anum_scaling},
    {"perturbation", ExperimentKind::perturbation},
    {"psucc", ExperimentKind::psucc},
    {"cost", ExperimentKind::cost},
};

const std::vector<std::string> kKnownKeys = {
    "kind",
    "system.n", "system.topology", "system.coupling", "system.strength",
    "system.strength_seed",
    "target.gate", "target.control", "target.target",
    "pulse.t_gate", "pulse.n_ts",
    "optimizer.f_targ", "optimizer.max_upds", "optimizer.gradient",
    "optimizer.fd_step", "optimizer.measurement", "optimizer.a_num",
    "optimizer.shots", "optimizer.protocol", "optimizer.stall_window",
    "optimizer.stall_eps", "optimizer.f_exact",
    "harness.trials", "harness.workers", "harness.seed",
    "scaling.n_min", "scaling.n_max",
    "anum.grid", "anum.grid_min", "anum.grid_max", "anum.grid_points",
    "anum.target_p", "anum.trials_per_point",
    "perturb.n_min", "perturb.n_max", "perturb.samples", "perturb.norm",
    "cost.t_init", "cost.t_meas", "cost.mode", "cost.a_num", "cost.n_fids",
    "cost.n_upds", "cost.p_succ",
    "output.dir",
};

void reject_unknown(const RawSpec& raw) {
  for (const auto& [path, entry] : raw.entries) {
    if (entry.consumed) continue;
    std::string best;
    int best_dist = 4;  // suggest only close matches
    for (const std::string& known : kKnownKeys) {
      const int d = edit_distance(path, known);
      if (d < best_dist) {
        best_dist = d;
        best = known;
      }
    }
    std::string msg = path + ": unknown key (line " +
                      std::to_string(entry.line) + ")";
    if (!best.empty()) msg += "; did you mean '" + best + "'?";
    throw SpecError(msg);
  }
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

const char* to_string(ExperimentKind k) {
  for (const auto& [name, val] : kKinds)
    if (val == k) return name.c_str();
  return "?";
}

ExperimentSpec parse_spec(const std::string& text,
                          std::optional<ExperimentKind> implied_kind) {
  RawSpec raw = tokenize(text);
  ExperimentSpec spec;

  if (const RawEntry* e = raw.find("kind")) {
    spec.kind = parse_enum("kind", e->value, kKinds);
    if (implied_kind && spec.kind != *implied_kind)
      throw SpecError(std::string("kind: '") + to_string(spec.kind) +
                      "' does not match the subcommand (expected '" +
                      to_string(*implied_kind) + "')");
  } else if (implied_kind) {
    spec.kind = *implied_kind;
  } else {
    throw SpecError("kind: missing required key");
  }
  const ExperimentKind kind = spec.kind;

  const bool optimizes =
      kind == ExperimentKind::fidelity_trace ||
      kind == ExperimentKind::topology_table ||
      kind == ExperimentKind::nupds_scaling ||
      kind == ExperimentKind::anum_scaling || kind == ExperimentKind::psucc;
  const bool sweeps_n = kind == ExperimentKind::nupds_scaling ||
                        kind == ExperimentKind::anum_scaling;
  const bool needs_system =
      (optimizes && !sweeps_n) || kind == ExperimentKind::cost;

  // [system]
  if (const RawEntry* e = raw.find("system.n")) spec.n = static_cast<int>(parse_long("system.n", e->value));
  else if (needs_system) throw SpecError("system.n: missing required key");
  if (const RawEntry* e = raw.find("system.topology"))
    spec.topology = parse_enum("system.topology", e->value,
                               std::vector<std::pair<std::string, Topology>>{
                                   {"chain", Topology::chain},
                                   {"ring", Topology::ring},
                                   {"star", Topology::star},
                                   {"fully_connected", Topology::fully_connected}});
  else if (optimizes) throw SpecError("system.topology: missing required key");
  if (const RawEntry* e = raw.find("system.coupling"))
    spec.coupling = parse_enum("system.coupling", e->value,
                               std::vector<std::pair<std::string, Coupling>>{
                                   {"ising", Coupling::ising},
                                   {"heisenberg", Coupling::heisenberg}});
  else if (optimizes) throw SpecError("system.coupling: missing required key");
  if (const RawEntry* e = raw.find("system.strength"))
    spec.strength = parse_double("system.strength", e->value);
  if (const RawEntry* e = raw.find("system.strength_seed"))
    spec.strength_seed = parse_u64("system.strength_seed", e->value);

  // [target]
  if (const RawEntry* e = raw.find("target.gate")) {
    if (e->value != "cnot") type_error("target.gate", "cnot", e->value);
  }
  if (const RawEntry* e = raw.find("target.control"))
    spec.control = static_cast<int>(parse_long("target.control", e->value));
  if (const RawEntry* e = raw.find("target.target"))
    spec.target = static_cast<int>(parse_long("target.target", e->value));

  // [pulse]
  if (const RawEntry* e = raw.find("pulse.t_gate"))
    spec.t_gate = parse_time("pulse.t_gate", e->value);
  else if (optimizes) throw SpecError("pulse.t_gate: missing required key");
  if (const RawEntry* e = raw.find("pulse.n_ts"))
    spec.n_ts = static_cast<int>(parse_long("pulse.n_ts", e->value));
  else if (optimizes) throw SpecError("pulse.n_ts: missing required key");

  // [optimizer]
  if (const RawEntry* e = raw.find("optimizer.f_targ"))
    spec.f_targ = parse_double("optimizer.f_targ", e->value);
  else if (optimizes) throw SpecError("optimizer.f_targ: missing required key");
  if (const RawEntry* e = raw.find("optimizer.max_upds"))
    spec.max_upds = parse_long("optimizer.max_upds", e->value);
  if (const RawEntry* e = raw.find("optimizer.gradient"))
    spec.gradient_mode =
        parse_enum("optimizer.gradient", e->value,
                   std::vector<std::pair<std::string, GradientMode>>{
                       {"analytic", GradientMode::analytic},
                       {"finite_difference", GradientMode::finite_difference}});
  if (const RawEntry* e = raw.find("optimizer.fd_step"))
    spec.fd_step = parse_double("optimizer.fd_step", e->value);
  bool measurement_given = false;
  if (const RawEntry* e = raw.find("optimizer.measurement")) {
    measurement_given = true;
    spec.measure_mode = parse_enum("optimizer.measurement", e->value,
                                   std::vector<std::pair<std::string, MeasureMode>>{
                                       {"exact", MeasureMode::exact},
                                       {"quantized", MeasureMode::quantized},
                                       {"sampled", MeasureMode::sampled}});
  }
  if (const RawEntry* e = raw.find("optimizer.a_num"))
    spec.a_num = parse_double("optimizer.a_num", e->value);
  if (!measurement_given && spec.a_num > 0.0)
    spec.measure_mode = MeasureMode::quantized;
  if (const RawEntry* e = raw.find("optimizer.shots"))
    spec.shots = parse_long("optimizer.shots", e->value);
  if (const RawEntry* e = raw.find("optimizer.protocol"))
    spec.protocol = parse_enum("optimizer.protocol", e->value,
                               std::vector<std::pair<std::string, CertifyProtocol>>{
                                   {"sequential", CertifyProtocol::sequential},
                                   {"parallel", CertifyProtocol::parallel}});
  if (const RawEntry* e = raw.find("optimizer.stall_window"))
    spec.stall_window = static_cast<int>(parse_long("optimizer.stall_window", e->value));
  if (const RawEntry* e = raw.find("optimizer.stall_eps"))
    spec.stall_eps = parse_double("optimizer.stall_eps", e->value);
  if (const RawEntry* e = raw.find("optimizer.f_exact"))
    spec.f_exact = parse_enum("optimizer.f_exact", e->value,
                              std::vector<std::pair<std::string, TraceFExact>>{
                                  {"auto", TraceFExact::automatic},
                                  {"on", TraceFExact::on},
                                  {"off", TraceFExact::off}});

  // [harness]
  if (const RawEntry* e = raw.find("harness.trials"))
    spec.trials = parse_long("harness.trials", e->value);
  if (const RawEntry* e = raw.find("harness.workers"))
    spec.workers = static_cast<int>(parse_long("harness.workers", e->value));
  if (const RawEntry* e = raw.find("harness.seed"))
    spec.seed = parse_u64("harness.seed", e->value);

  // [scaling]
  if (const RawEntry* e = raw.find("scaling.n_min"))
    spec.scaling_n_min = static_cast<int>(parse_long("scaling.n_min", e->value));
  else if (sweeps_n) throw SpecError("scaling.n_min: missing required key");
  if (const RawEntry* e = raw.find("scaling.n_max"))
    spec.scaling_n_max = static_cast<int>(parse_long("scaling.n_max", e->value));
  else if (sweeps_n) throw SpecError("scaling.n_max: missing required key");

  // [anum]
  {
    const RawEntry* grid = raw.find("anum.grid");
    const RawEntry* gmin = raw.find("anum.grid_min");
    const RawEntry* gmax = raw.find("anum.grid_max");
    const RawEntry* gpts = raw.find("anum.grid_points");
    if (grid) {
      if (gmin || gmax || gpts)
        throw SpecError("anum.grid: give either an explicit grid or grid_min/grid_max/grid_points, not both");
      spec.anum_grid = parse_double_list("anum.grid", grid->value);
    } else if (gmin || gmax || gpts) {
      if (!(gmin && gmax && gpts))
        throw SpecError("anum.grid_min: grid_min, grid_max and grid_points must be given together");
      const double lo = parse_double("anum.grid_min", gmin->value);
      const double hi = parse_double("anum.grid_max", gmax->value);
      const long pts = parse_long("anum.grid_points", gpts->value);
      if (!(lo > 0.0 && hi > lo))
        throw SpecError("anum.grid_min: need 0 < grid_min < grid_max");
      if (pts < 2) throw SpecError("anum.grid_points: need at least 2 points");
      for (long i = 0; i < pts; ++i)
        spec.anum_grid.push_back(
            std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (pts - 1)));
    } else if (kind == ExperimentKind::anum_scaling) {
      throw SpecError("anum.grid: missing required key");
    }
  }
  if (const RawEntry* e = raw.find("anum.target_p"))
    spec.target_p = parse_double("anum.target_p", e->value);
  if (const RawEntry* e = raw.find("anum.trials_per_point"))
    spec.trials_per_point = parse_long("anum.trials_per_point", e->value);

  // [perturb]
  if (const RawEntry* e = raw.find("perturb.n_min"))
    spec.perturb_n_min = static_cast<int>(parse_long("perturb.n_min", e->value));
  if (const RawEntry* e = raw.find("perturb.n_max"))
    spec.perturb_n_max = static_cast<int>(parse_long("perturb.n_max", e->value));
  if (const RawEntry* e = raw.find("perturb.samples"))
    spec.samples = parse_long("perturb.samples", e->value);
  if (const RawEntry* e = raw.find("perturb.norm"))
    spec.norm = parse_double("perturb.norm", e->value);

  // [cost]
  if (const RawEntry* e = raw.find("cost.t_init"))
    spec.cost_t_init = parse_double("cost.t_init", e->value);
  if (const RawEntry* e = raw.find("cost.t_meas"))
    spec.cost_t_meas = parse_double("cost.t_meas", e->value);
  if (const RawEntry* e = raw.find("cost.mode"))
    spec.cost_mode = parse_enum("cost.mode", e->value,
                                std::vector<std::pair<std::string, NMeasMode>>{
                                    {"full", NMeasMode::full},
                                    {"sequential_local", NMeasMode::sequential_local},
                                    {"parallel_local", NMeasMode::parallel_local}});
  if (const RawEntry* e = raw.find("cost.a_num"))
    spec.cost_a_num = parse_double("cost.a_num", e->value);
  if (const RawEntry* e = raw.find("cost.n_fids"))
    spec.cost_n_fids = parse_long("cost.n_fids", e->value);
  if (const RawEntry* e = raw.find("cost.n_upds"))
    spec.cost_n_upds = parse_long("cost.n_upds", e->value);
  if (const RawEntry* e = raw.find("cost.p_succ"))
    spec.cost_p_succ = parse_double("cost.p_succ", e->value);

  // [output]
  if (const RawEntry* e = raw.find("output.dir")) spec.output_dir = e->value;

  reject_unknown(raw);

  // cross-field validation
  if (spec.control == spec.target)
    throw SpecError("target.control and target.target must differ (both are " +
                    std::to_string(spec.control) + ")");
  if (spec.control < 0 || spec.target < 0)
    throw SpecError("target.control/target.target: qubit indices must be >= 0");
  const int smallest_n = sweeps_n ? spec.scaling_n_min : spec.n;
  if ((optimizes || kind == ExperimentKind::cost) &&
      (spec.control >= smallest_n || spec.target >= smallest_n))
    throw SpecError("target.control/target.target: index exceeds the smallest system size");
  if (needs_system && spec.n < 2)
    throw SpecError("system.n: need at least 2 qubits");
  if (sweeps_n && (spec.scaling_n_min < 2 || spec.scaling_n_max < spec.scaling_n_min))
    throw SpecError("scaling.n_min: need 2 <= n_min <= n_max");
  if (optimizes) {
    if (!(spec.f_targ > 0.0 && spec.f_targ < 1.0))
      throw SpecError("optimizer.f_targ: must lie strictly between 0 and 1");
    if (spec.n_ts < 1) throw SpecError("pulse.n_ts: must be >= 1");
    if (!(spec.t_gate > 0.0)) throw SpecError("pulse.t_gate: must be positive");
    if (spec.max_upds < 1) throw SpecError("optimizer.max_upds: must be >= 1");
    if (spec.trials < 1) throw SpecError("harness.trials: must be >= 1");
    if (spec.measure_mode == MeasureMode::exact && spec.a_num != 0.0)
      throw SpecError("optimizer.a_num: must be 0 in exact measurement mode");
    if (spec.measure_mode != MeasureMode::exact && spec.a_num <= 0.0)
      throw SpecError("optimizer.a_num: must be positive outside exact measurement mode");
    if (spec.measure_mode == MeasureMode::sampled && spec.shots < 1)
      throw SpecError("optimizer.shots: must be >= 1 in sampled mode");
  }
  if (kind == ExperimentKind::anum_scaling) {
    if (!(spec.target_p > 0.0 && spec.target_p < 1.0))
      throw SpecError("anum.target_p: must lie strictly between 0 and 1");
    if (spec.trials_per_point < 1)
      throw SpecError("anum.trials_per_point: must be >= 1");
    for (std::size_t i = 0; i < spec.anum_grid.size(); ++i) {
      if (spec.anum_grid[i] <= 0.0)
        throw SpecError("anum.grid: values must be positive");
      if (i > 0 && spec.anum_grid[i] <= spec.anum_grid[i - 1])
        throw SpecError("anum.grid: values must be strictly ascending");
    }
    if (spec.anum_grid.size() < 2)
      throw SpecError("anum.grid: need at least 2 points");
  }
  if (kind == ExperimentKind::perturbation) {
    if (spec.perturb_n_min < 2 || spec.perturb_n_max < spec.perturb_n_min)
      throw SpecError("perturb.n_min: need 2 <= n_min <= n_max");
    if (spec.samples < 1) throw SpecError("perturb.samples: must be >= 1");
    if (!(spec.norm > 0.0)) throw SpecError("perturb.norm: must be positive");
  }
  if (kind == ExperimentKind::cost) {
    if (spec.cost_n_fids < 1) throw SpecError("cost.n_fids: must be >= 1");
    if (spec.cost_n_upds < 1) throw SpecError("cost.n_upds: must be >= 1");
    if (!(spec.cost_p_succ > 0.0 && spec.cost_p_succ <= 1.0))
      throw SpecError("cost.p_succ: must lie in (0, 1]");
    if (spec.cost_a_num < 0.0) throw SpecError("cost.a_num: must be >= 0");
  }

  return spec;
}

SpinSystem ExperimentSpec::make_system(int n_qubits) const {
  SpinSystem sys(n_qubits, topology, coupling, strength);
  if (strength_seed) sys = randomize_strengths(sys, *strength_seed);
  return sys;
}

TargetGate ExperimentSpec::make_target(int n_qubits) const {
  return cnot_target(n_qubits, control, target);
}

OptimizerConfig ExperimentSpec::optimizer_config() const {
  OptimizerConfig cfg;
  cfg.f_targ = f_targ;
  cfg.max_upds = max_upds;
  cfg.gradient_mode = gradient_mode;
  cfg.fd_step = fd_step;
  cfg.measurement.mode = measure_mode;
  cfg.measurement.a_num = a_num;
  cfg.measurement.shots = shots;
  cfg.measurement.protocol = protocol;
  cfg.stall_window = stall_window;
  cfg.stall_eps = stall_eps;
  cfg.f_exact = f_exact;
  return cfg;
}

std::vector<std::pair<std::string, std::string>> ExperimentSpec::echo() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("kind", to_string(kind));
  const bool optimizes = kind == ExperimentKind::fidelity_trace ||
                         kind == ExperimentKind::topology_table ||
                         kind == ExperimentKind::nupds_scaling ||
                         kind == ExperimentKind::anum_scaling ||
                         kind == ExperimentKind::psucc;
  const bool sweeps_n = kind == ExperimentKind::nupds_scaling ||
                        kind == ExperimentKind::anum_scaling;
  if (optimizes || kind == ExperimentKind::cost) {
    if (!sweeps_n) kv.emplace_back("system.n", std::to_string(n));
    kv.emplace_back("target.control", std::to_string(control));
    kv.emplace_back("target.gate", "cnot");
    kv.emplace_back("target.target", std::to_string(target));
  }
  if (optimizes) {
    kv.emplace_back("system.topology", to_string(topology));
    kv.emplace_back("system.coupling", to_string(coupling));
    kv.emplace_back("system.strength", format_value(strength));
    if (strength_seed)
      kv.emplace_back("system.strength_seed", std::to_string(*strength_seed));
    kv.emplace_back("pulse.t_gate", format_value(t_gate));
    kv.emplace_back("pulse.n_ts", std::to_string(n_ts));
    kv.emplace_back("optimizer.f_targ", format_value(f_targ));
    kv.emplace_back("optimizer.max_upds", std::to_string(max_upds));
    kv.emplace_back("optimizer.gradient",
                    gradient_mode == GradientMode::analytic ? "analytic"
                                                            : "finite_difference");
    kv.emplace_back("optimizer.fd_step", format_value(fd_step));
    kv.emplace_back("optimizer.measurement",
                    measure_mode == MeasureMode::exact       ? "exact"
                    : measure_mode == MeasureMode::quantized ? "quantized"
                                                             : "sampled");
    kv.emplace_back("optimizer.a_num", format_value(a_num));
    if (measure_mode == MeasureMode::sampled) {
      kv.emplace_back("optimizer.shots", std::to_string(shots));
      kv.emplace_back("optimizer.protocol",
                      protocol == CertifyProtocol::sequential ? "sequential"
                                                              : "parallel");
    }
    kv.emplace_back("optimizer.stall_window", std::to_string(stall_window));
    kv.emplace_back("optimizer.stall_eps", format_value(stall_eps));
    kv.emplace_back("harness.trials", std::to_string(trials));
    kv.emplace_back("harness.seed", std::to_string(seed));
  }
  if (sweeps_n) {
    kv.emplace_back("scaling.n_min", std::to_string(scaling_n_min));
    kv.emplace_back("scaling.n_max", std::to_string(scaling_n_max));
  }
  if (kind == ExperimentKind::anum_scaling) {
    std::string grid;
    for (double a : anum_grid) {
      if (!grid.empty()) grid += ",";
      grid += format_value(a);
    }
    kv.emplace_back("anum.grid", grid);
    kv.emplace_back("anum.target_p", format_value(target_p));
    kv.emplace_back("anum.trials_per_point", std::to_string(trials_per_point));
  }
  if (kind == ExperimentKind::perturbation) {
    kv.emplace_back("perturb.n_min", std::to_string(perturb_n_min));
    kv.emplace_back("perturb.n_max", std::to_string(perturb_n_max));
    kv.emplace_back("perturb.samples", std::to_string(samples));
    kv.emplace_back("perturb.norm", format_value(norm));
    kv.emplace_back("harness.seed", std::to_string(seed));
  }
  if (kind == ExperimentKind::cost) {
    kv.emplace_back("cost.t_init", format_value(cost_t_init));
    kv.emplace_back("cost.t_meas", format_value(cost_t_meas));
    kv.emplace_back("cost.t_gate", format_value(t_gate));
    kv.emplace_back("cost.mode",
                    cost_mode == NMeasMode::full ? "full"
                    : cost_mode == NMeasMode::sequential_local
                        ? "sequential_local"
                        : "parallel_local");
    kv.emplace_back("cost.a_num", format_value(cost_a_num));
    kv.emplace_back("cost.n_fids", std::to_string(cost_n_fids));
    kv.emplace_back("cost.n_upds", std::to_string(cost_n_upds));
    kv.emplace_back("cost.p_succ", format_value(cost_p_succ));
  }
  std::sort(kv.begin(), kv.end());
  return kv;
}

}  // namespace insitu
