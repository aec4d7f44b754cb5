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

#include "insitu/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace insitu {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INSITU_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(long count, int workers,
                  const std::function<void(long)>& body) {
  workers = std::min<long>(std::max(workers, 1), count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        body(i);
    });
  for (auto& th : pool) th.join();
}

PsuccEstimate::PsuccEstimate(long n_trials, long n_successes)
    : trials(n_trials), successes(n_successes) {
  if (trials < 1) throw std::invalid_argument("PsuccEstimate: trials must be >= 1");
  if (successes < 0 || successes > trials)
    throw std::invalid_argument("PsuccEstimate: successes out of range");
  p = static_cast<double>(successes) / trials;
  stderr_p = std::sqrt(p * (1.0 - p) / trials);
}

TrialStats run_trials(const SpinSystem& sys, const TargetGate& target,
                      double t_gate, int n_ts, const OptimizerConfig& cfg,
                      long trials, std::uint64_t master_seed, int workers) {
  if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
  const CompiledSystem compiled = compile(sys);
  const int n_ctrl = static_cast<int>(compiled.controls.size());

  struct TrialResult {
    bool success = false;
    long n_upds = 0;
  };
  std::vector<TrialResult> results(trials);
  parallel_for(trials, resolve_workers(workers), [&](long i) {
    const std::uint64_t s = derive_seed(master_seed, static_cast<std::uint64_t>(i));
    OptimizerConfig c = cfg;
    c.seed = derive_seed(s, 1);
    const PulseGrid init = random_initial_pulse(n_ctrl, n_ts, t_gate, s);
    const OptimizationOutcome o = optimize(compiled, target, init, c);
    results[i] = {o.success, o.n_upds};
  });

  long successes = 0;
  double sum = 0.0, sumsq = 0.0;
  for (const TrialResult& r : results) {
    if (!r.success) continue;
    ++successes;
    sum += static_cast<double>(r.n_upds);
    sumsq += static_cast<double>(r.n_upds) * r.n_upds;
  }
  TrialStats stats;
  stats.psucc = PsuccEstimate(trials, successes);
  if (successes > 0) {
    stats.mean_nupds = sum / successes;
    if (successes > 1) {
      const double var = std::max(
          0.0, (sumsq - successes * stats.mean_nupds * stats.mean_nupds) /
                   (successes - 1.0));
      stats.stderr_nupds = std::sqrt(var / successes);
    }
  }
  return stats;
}

PsuccEstimate estimate_psucc(const SpinSystem& sys, const TargetGate& target,
                             double t_gate, int n_ts, const OptimizerConfig& cfg,
                             long trials, std::uint64_t master_seed,
                             int workers) {
  return run_trials(sys, target, t_gate, n_ts, cfg, trials, master_seed, workers)
      .psucc;
}

double anum_threshold_from_points(
    const std::vector<std::pair<double, double>>& points, double target_p) {
  if (points.size() < 2)
    throw std::invalid_argument("anum threshold: need at least two grid points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].first <= 0.0)
      throw std::invalid_argument("anum threshold: grid values must be positive");
    if (i > 0 && points[i].first <= points[i - 1].first)
      throw std::invalid_argument("anum threshold: grid must be strictly ascending");
  }

  // pool adjacent violators: project the noisy p values onto the
  // non-increasing sequences
  std::vector<double> value;
  std::vector<double> weight;
  for (const auto& [a, p] : points) {
    value.push_back(p);
    weight.push_back(1.0);
    while (value.size() > 1 && value[value.size() - 2] < value.back()) {
      const double w = weight[weight.size() - 2] + weight.back();
      const double v = (value[value.size() - 2] * weight[weight.size() - 2] +
                        value.back() * weight.back()) /
                       w;
      value.pop_back();
      weight.pop_back();
      value.back() = v;
      weight.back() = w;
    }
  }
  std::vector<double> p_fit;
  for (std::size_t b = 0; b < value.size(); ++b)
    for (long r = 0; r < std::lround(weight[b]); ++r) p_fit.push_back(value[b]);

  if (target_p > p_fit.front() || target_p < p_fit.back())
    throw std::domain_error("anum threshold: target_p outside interpolant range");

  for (std::size_t i = 0; i + 1 < p_fit.size(); ++i) {
    const double p0 = p_fit[i], p1 = p_fit[i + 1];
    if (target_p == p0) return points[i].first;
    if (target_p == p1) return points[i + 1].first;
    if (target_p < p0 && target_p > p1) {
      const double t = (p0 - target_p) / (p0 - p1);
      const double la = std::log(points[i].first);
      const double lb = std::log(points[i + 1].first);
      return std::exp(la + t * (lb - la));
    }
  }
  return points.back().first;
}

double anum_at_psucc(const SpinSystem& sys, const TargetGate& target,
                     double t_gate, int n_ts, const OptimizerConfig& base_cfg,
                     double target_p, const std::vector<double>& anum_grid,
                     long trials_per_point, std::uint64_t master_seed,
                     int workers,
                     std::vector<std::pair<double, double>>* points_out) {
  if (!(target_p > 0.0 && target_p < 1.0))
    throw std::invalid_argument("anum_at_psucc: target_p must lie in (0,1)");
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < anum_grid.size(); ++i) {
    OptimizerConfig cfg = base_cfg;
    cfg.measurement.mode = MeasureMode::quantized;
    cfg.measurement.a_num = anum_grid[i];
    const PsuccEstimate est =
        estimate_psucc(sys, target, t_gate, n_ts, cfg, trials_per_point,
                       derive_seed(master_seed, i), workers);
    points.emplace_back(anum_grid[i], est.p);
  }
  if (points_out) *points_out = points;
  return anum_threshold_from_points(points, target_p);
}

long n_meas_count(NMeasMode mode, int n, const std::vector<int>& subsystem_dims) {
  if (subsystem_dims.empty())
    throw std::invalid_argument("n_meas_count: need at least one subsystem");
  switch (mode) {
    case NMeasMode::full: {
      const long d = 1L << n;
      return d * d;
    }
    case NMeasMode::sequential_local: {
      long total = 0;
      for (int d : subsystem_dims) total += static_cast<long>(d) * d;
      return total;
    }
    case NMeasMode::parallel_local: {
      long best = 0;
      for (int d : subsystem_dims)
        best = std::max(best, static_cast<long>(d) * d);
      return best;
    }
  }
  return 0;
}

CostReport cost_report(const CostModel& cm, int n,
                       const std::vector<int>& subsystem_dims) {
  if (!(cm.p_succ > 0.0))
    throw std::invalid_argument("cost_report: p_succ must be positive");
  if (cm.n_fids < 1 || cm.n_upds < 1)
    throw std::invalid_argument("cost_report: counts must be >= 1");
  if (cm.a_num < 0.0)
    throw std::invalid_argument("cost_report: a_num must be >= 0");

  CostReport r;
  r.n_meas = n_meas_count(cm.mode, n, subsystem_dims);
  r.n_prec = cm.a_num == 0.0
                 ? 1
                 : static_cast<long>(
                       std::ceil(1.0 / (cm.a_num * cm.a_num) - 1e-9));
  r.n_fids = cm.n_fids;
  r.n_upds = cm.n_upds;
  r.n_runs = static_cast<double>(r.n_meas) * static_cast<double>(r.n_prec) *
             static_cast<double>(r.n_fids) * static_cast<double>(r.n_upds);
  r.t_run = cm.t_init + cm.t_gate + cm.t_meas;
  r.t_total = r.t_run * r.n_runs / cm.p_succ;
  r.p_succ = cm.p_succ;
  return r;
}

std::vector<PerturbRow> perturbation_scaling(int n_min, int n_max, double norm,
                                             long samples, std::uint64_t seed,
                                             int workers) {
  if (!(norm > 0.0))
    throw std::invalid_argument("perturbation_scaling: norm must be positive");
  if (n_min < 2 || n_max < n_min)
    throw std::invalid_argument("perturbation_scaling: bad qubit range");
  if (samples < 1)
    throw std::invalid_argument("perturbation_scaling: samples must be >= 1");

  std::vector<PerturbRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    const TargetGate target = cnot_target(n, 0, 1);
    const CMat u_t = target.full_unitary();
    const LocalFidelityEvaluator eval(target);
    const std::uint64_t seed_n = derive_seed(seed, static_cast<std::uint64_t>(n));

    std::vector<double> f(samples), fle(samples);
    parallel_for(samples, resolve_workers(workers), [&](long i) {
      const CMat h = random_hamiltonian(
          n, norm, derive_seed(seed_n, static_cast<std::uint64_t>(i)));
      const CMat u = matrix_exponential(h, cxd(0, -1)) * u_t;
      f[i] = gate_fidelity_unitary(u, u_t);
      fle[i] = eval.local_estimator(u);
    });

    PerturbRow row;
    row.n = n;
    row.samples = samples;
    for (long i = 0; i < samples; ++i) {
      row.mean_f += f[i];
      row.mean_fle += fle[i];
    }
    row.mean_f /= samples;
    row.mean_fle /= samples;
    rows.push_back(row);
  }
  return rows;
}

namespace {

// least squares y ~ a + b x; returns residual sum of squares and the fit
void linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                double& a, double& b) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = m * sxx - sx * sx;
  b = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
  a = (sy - b * sx) / m;
}

}  // namespace

double linear_fit_sse(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit_sse: need matching x/y with >= 2 points");
  double a, b;
  linear_fit(x, y, a, b);
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (a + b * x[i]);
    sse += r * r;
  }
  return sse;
}

double exponential_fit_sse(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("exponential_fit_sse: need matching x/y with >= 2 points");
  std::vector<double> ly;
  for (double v : y) {
    if (!(v > 0.0))
      throw std::invalid_argument("exponential_fit_sse: y values must be positive");
    ly.push_back(std::log(v));
  }
  double a, b;
  linear_fit(x, ly, a, b);
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - std::exp(a + b * x[i]);
    sse += r * r;
  }
  return sse;
}

}  // namespace insitu
