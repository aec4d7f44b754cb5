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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "insitu/harness.hpp"

namespace insitu {

// Config file problem: carries the offending key path in the message.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  fidelity_trace,
  topology_table,
  nupds_scaling,
  anum_scaling,
  perturbation,
  psucc,
  cost,
};

const char* to_string(ExperimentKind k);

// Parsed and validated experiment configuration. The surface syntax is an
// INI-style text: optional `kind = ...` before the first section, then
// `[section]` headers with `key = value` lines and `#` comments. Unknown
// keys are hard errors. See README for the full key table and defaults.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::fidelity_trace;

  // [system]
  int n = 0;
  Topology topology = Topology::chain;
  Coupling coupling = Coupling::ising;
  double strength = 1.0;
  std::optional<std::uint64_t> strength_seed;

  // [target]
  int control = 0;
  int target = 1;

  // [pulse]
  double t_gate = 0.0;
  int n_ts = 0;

  // [optimizer]
  double f_targ = 0.0;
  long max_upds = 1000;
  GradientMode gradient_mode = GradientMode::analytic;
  double fd_step = 0.0;
  MeasureMode measure_mode = MeasureMode::exact;
  double a_num = 0.0;
  long shots = 10000;
  CertifyProtocol protocol = CertifyProtocol::sequential;
  int stall_window = 50;
  double stall_eps = 1e-6;
  TraceFExact f_exact = TraceFExact::automatic;

  // [harness]
  long trials = 50;
  int workers = 0;
  std::uint64_t seed = 12345;

  // [scaling]
  int scaling_n_min = 4;
  int scaling_n_max = 6;

  // [anum]
  std::vector<double> anum_grid;
  double target_p = 0.5;
  long trials_per_point = 20;

  // [perturb]
  int perturb_n_min = 3;
  int perturb_n_max = 7;
  long samples = 100;
  double norm = 0.1;

  // [cost]
  double cost_t_init = 1.0;
  double cost_t_meas = 1.0;
  NMeasMode cost_mode = NMeasMode::parallel_local;
  double cost_a_num = 0.0;
  long cost_n_fids = 1;
  long cost_n_upds = 1;
  double cost_p_succ = 1.0;

  // [output]
  std::string output_dir = "out";

  // Effective values (explicit or defaulted) for the artifact metadata,
  // sorted by key.
  std::vector<std::pair<std::string, std::string>> echo() const;

  SpinSystem make_system(int n_qubits) const;
  SpinSystem make_system() const { return make_system(n); }
  TargetGate make_target(int n_qubits) const;
  OptimizerConfig optimizer_config() const;
};

ExperimentSpec parse_spec(const std::string& text,
                          std::optional<ExperimentKind> implied_kind = {});

}  // namespace insitu
