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
#include <functional>
#include <vector>

#include "insitu/optimizer.hpp"

namespace insitu {

// requested > 0 wins; otherwise INSITU_WORKERS, otherwise the hardware count.
int resolve_workers(int requested);

// Runs body(0..count-1) on up to `workers` threads. Callers store results by
// index, so the schedule never changes the outcome.
void parallel_for(long count, int workers, const std::function<void(long)>& body);

struct PsuccEstimate {
  long trials = 0;
  long successes = 0;
  double p = 0.0;
  double stderr_p = 0.0;

  PsuccEstimate() = default;
  PsuccEstimate(long n_trials, long n_successes);
};

// Aggregate over seeded repeats of one optimization scenario. Update counts
// are averaged over the successful runs.
struct TrialStats {
  PsuccEstimate psucc;
  double mean_nupds = 0.0;
  double stderr_nupds = 0.0;
};

TrialStats run_trials(const SpinSystem& sys, const TargetGate& target,
                      double t_gate, int n_ts, const OptimizerConfig& cfg,
                      long trials, std::uint64_t master_seed, int workers);

PsuccEstimate estimate_psucc(const SpinSystem& sys, const TargetGate& target,
                             double t_gate, int n_ts, const OptimizerConfig& cfg,
                             long trials, std::uint64_t master_seed, int workers);

// Monotone (non-increasing, enforced by pool-adjacent-violators) piecewise
// linear interpolation of p against log(a_num); returns the a_num where the
// interpolant crosses target_p. Throws std::domain_error outside the range.
double anum_threshold_from_points(
    const std::vector<std::pair<double, double>>& points, double target_p);

// Sweeps the measurement accuracy grid, estimating p_succ at each point with
// quantized measurements, then interpolates the target_p crossing.
double anum_at_psucc(const SpinSystem& sys, const TargetGate& target,
                     double t_gate, int n_ts, const OptimizerConfig& base_cfg,
                     double target_p, const std::vector<double>& anum_grid,
                     long trials_per_point, std::uint64_t master_seed,
                     int workers,
                     std::vector<std::pair<double, double>>* points_out = nullptr);

enum class NMeasMode { full, sequential_local, parallel_local };

// Inputs of the run-count and wall-time decomposition
//   N_runs = N_meas * N_prec * N_fids * N_upds
//   T_total = (T_init + T_gate + T_meas) * N_runs / p_succ.
struct CostModel {
  double t_init = 1.0;
  double t_meas = 1.0;
  double t_gate = 0.0;
  NMeasMode mode = NMeasMode::parallel_local;
  double a_num = 0.0;  // 0 = full numerical precision, N_prec = 1
  long n_fids = 1;
  long n_upds = 1;
  double p_succ = 1.0;
};

struct CostReport {
  long n_meas = 0;
  long n_prec = 0;
  long n_fids = 0;
  long n_upds = 0;
  double n_runs = 0.0;
  double t_run = 0.0;
  double t_total = 0.0;
  double p_succ = 0.0;
};

long n_meas_count(NMeasMode mode, int n, const std::vector<int>& subsystem_dims);
CostReport cost_report(const CostModel& cm, int n,
                       const std::vector<int>& subsystem_dims);

struct PerturbRow {
  int n = 0;
  double mean_f = 0.0;
  double mean_fle = 0.0;
  long samples = 0;
};

// Mean gate fidelity and mean local estimator between CNOT x identities and
// its perturbation by exp(-iH), H Gaussian with fixed spectral norm.
std::vector<PerturbRow> perturbation_scaling(int n_min, int n_max, double norm,
                                             long samples, std::uint64_t seed,
                                             int workers);

// Least-squares helpers for the scaling studies; the exponential variant fits
// log(y) and reports residuals in the original space.
double linear_fit_sse(const std::vector<double>& x, const std::vector<double>& y);
double exponential_fit_sse(const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace insitu
