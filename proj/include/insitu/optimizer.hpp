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

#include <cstdint>
#include <vector>

#include "insitu/certification.hpp"
#include "insitu/propagation.hpp"

namespace insitu {

enum class GradientMode { analytic, finite_difference };
enum class TraceFExact { automatic, on, off };

struct OptimizerConfig {
  double f_targ = 0.999;
  long max_upds = 1000;
  GradientMode gradient_mode = GradientMode::analytic;
  double fd_step = 0.0;  // 0 = per-mode default (1e-6 exact, 1e-3 otherwise)
  MeasurementModel measurement;
  int stall_window = 50;
  double stall_eps = 1e-6;
  std::uint64_t seed = 0;
  // Full-system gate fidelity in the trace is diagnostic only; automatic
  // computes it up to 7 qubits.
  TraceFExact f_exact = TraceFExact::automatic;

  // Backtracking Armijo line search on the measured estimator. The first
  // probe of each update starts at twice the previously accepted step
  // (ls_init_step on the first update and after a rejected update), which
  // lets the step length track the local curvature.
  double ls_init_step = 0.2;
  double ls_contraction = 0.5;
  int ls_max_backtracks = 8;
  double armijo_c1 = 1e-4;
  double ls_growth = 2.0;
  double ls_max_step = 1e3;

  void validate() const;
  double effective_fd_step() const;
};

struct TraceRecord {
  long iteration = 0;
  double f_le_measured = 0.0;
  double f_le_exact = 0.0;
  double f_exact = 0.0;  // NaN when not tracked
};

struct OptimizationOutcome {
  bool success = false;
  long n_upds = 0;
  long n_fids = 0;  // fidelity evaluations per update (1, or 1 + N_ctrl*N_ts)
  PulseGrid final_pulse;
  std::vector<TraceRecord> trace;
};

// dF_LE/du for every control amplitude, from the cached slot eigensystems of
// one forward propagation. Exact up to rounding; no extra evolutions needed.
Eigen::MatrixXd gradient_analytic(const CompiledSystem& sys,
                                  const PropagationResult& prop,
                                  const LocalFidelityEvaluator& eval);
Eigen::MatrixXd gradient_analytic(const SpinSystem& sys, const PulseGrid& pulse,
                                  const TargetGate& target);

struct FdGradient {
  Eigen::MatrixXd grad;
  long evals = 0;  // 1 + N_ctrl * N_ts
};

// Forward differences of the measured (possibly quantized or sampled)
// estimator.
FdGradient gradient_finite_difference(const CompiledSystem& sys,
                                      const PulseGrid& pulse,
                                      const TargetGate& target,
                                      const MeasurementModel& model,
                                      double fd_step, std::uint64_t seed);
FdGradient gradient_finite_difference(const SpinSystem& sys,
                                      const PulseGrid& pulse,
                                      const TargetGate& target,
                                      const MeasurementModel& model,
                                      double fd_step, std::uint64_t seed);

// The in-situ loop: measure the estimator, stop at f_targ, otherwise take a
// steepest-ascent step sized by backtracking line search; fail on max_upds,
// on a stall (best measured value improves by less than stall_eps over
// stall_window updates), or on a non-finite fidelity.
OptimizationOutcome optimize(const CompiledSystem& sys, const TargetGate& target,
                             const PulseGrid& init, const OptimizerConfig& cfg);
OptimizationOutcome optimize(const SpinSystem& sys, const TargetGate& target,
                             const PulseGrid& init, const OptimizerConfig& cfg);

}  // namespace insitu
