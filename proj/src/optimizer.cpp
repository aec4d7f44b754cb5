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

#include "insitu/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace insitu {

void OptimizerConfig::validate() const {
  if (!(f_targ > 0.0 && f_targ < 1.0))
    throw std::invalid_argument("OptimizerConfig: f_targ must lie in (0,1)");
  if (max_upds < 1)
    throw std::invalid_argument("OptimizerConfig: max_upds must be >= 1");
  if (gradient_mode == GradientMode::finite_difference && effective_fd_step() <= 0.0)
    throw std::invalid_argument("OptimizerConfig: fd_step must be positive");
  if (stall_window < 1 || stall_eps < 0.0)
    throw std::invalid_argument("OptimizerConfig: bad stall parameters");
  measurement.validate();
}

double OptimizerConfig::effective_fd_step() const {
  if (fd_step != 0.0) return fd_step;
  return measurement.mode == MeasureMode::exact ? 1e-6 : 1e-3;
}

namespace {

// (exp(-i a) - exp(-i b)) / (-i (a - b)) = exp(-i (a+b)/2) * sinc((a-b)/2);
// the divided difference of the exponential along the imaginary axis.
cxd exp_divided_difference(double a, double b) {
  const double mid = 0.5 * (a + b);
  const double delta = 0.5 * (a - b);
  double sinc;
  if (std::abs(delta) < 1e-8)
    sinc = 1.0 - delta * delta / 6.0;
  else
    sinc = std::sin(delta) / delta;
  return std::exp(cxd(0, -mid)) * sinc;
}

// Sampled measurements need a fresh stream per evaluation; exact and
// quantized ones ignore the seed.
struct Measurer {
  const TargetGate* target;
  const LocalFidelityEvaluator* eval;
  MeasurementModel model;
  std::uint64_t counter = 0;

  double estimator(const CMat& v) {
    const auto f = measure_local_fidelities(v, *target, *eval, model,
                                            derive_seed(model.seed, counter++));
    return LocalFidelityEvaluator::estimator_from_locals(f);
  }
};

}  // namespace

Eigen::MatrixXd gradient_analytic(const CompiledSystem& sys,
                                  const PropagationResult& prop,
                                  const LocalFidelityEvaluator& eval) {
  const int nts = static_cast<int>(prop.slot_propagators.size());
  const int nc = static_cast<int>(sys.controls.size());
  const Eigen::Index d = sys.drift.rows();
  const double dt = prop.dt;
  const double scale = 2.0 / std::sqrt(static_cast<double>(d));

  const CMat lambda_adj = eval.estimator_cogradient(prop.total).adjoint();

  Eigen::MatrixXd grad(nc, nts);
  CMat phi(d, d), a(d, d), c(d, d), dmat(d, d);
  for (int k = 0; k < nts; ++k) {
    const CMat& q = prop.slot_eigvecs[k];
    const Eigen::VectorXd& w = prop.slot_eigvals[k];
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index r = 0; r < d; ++r)
        phi(p, r) = exp_divided_difference(dt * w(p), dt * w(r));

    // A = Q^dag (F_k Lambda^dag B_{k+1}) Q, where F_k collects the slots
    // before k and B_{k+1} the ones after it.
    a.noalias() = q.adjoint() *
                  (prop.forward_partials[k] * lambda_adj *
                   prop.backward_partials[k + 1]) *
                  q;
    c = a.transpose().cwiseProduct(phi);
    dmat.noalias() = q * c.transpose() * q.adjoint();

    for (int ctrl = 0; ctrl < nc; ++ctrl) {
      const cxd s = dmat.transpose().cwiseProduct(sys.controls[ctrl]).sum();
      grad(ctrl, k) = scale * std::real(cxd(0, -dt) * s);
    }
  }
  return grad;
}

Eigen::MatrixXd gradient_analytic(const SpinSystem& sys, const PulseGrid& pulse,
                                  const TargetGate& target) {
  const CompiledSystem compiled = compile(sys);
  return gradient_analytic(compiled, propagate(compiled, pulse),
                           LocalFidelityEvaluator(target));
}

FdGradient gradient_finite_difference(const CompiledSystem& sys,
                                      const PulseGrid& pulse,
                                      const TargetGate& target,
                                      const MeasurementModel& model,
                                      double fd_step, std::uint64_t seed) {
  if (!(fd_step > 0.0))
    throw std::invalid_argument("gradient_finite_difference: fd_step must be positive");
  LocalFidelityEvaluator eval(target);
  Measurer meas{&target, &eval, model, 0};
  meas.model.seed = seed;

  FdGradient out;
  out.grad.resize(pulse.n_ctrl, pulse.n_ts);
  const double f0 = meas.estimator(evolve_total(sys, pulse));
  out.evals = 1;
  PulseGrid perturbed = pulse;
  for (int c = 0; c < pulse.n_ctrl; ++c)
    for (int k = 0; k < pulse.n_ts; ++k) {
      perturbed.amplitudes(c, k) += fd_step;
      const double f1 = meas.estimator(evolve_total(sys, perturbed));
      perturbed.amplitudes(c, k) = pulse.amplitudes(c, k);
      out.grad(c, k) = (f1 - f0) / fd_step;
      ++out.evals;
    }
  return out;
}

FdGradient gradient_finite_difference(const SpinSystem& sys,
                                      const PulseGrid& pulse,
                                      const TargetGate& target,
                                      const MeasurementModel& model,
                                      double fd_step, std::uint64_t seed) {
  return gradient_finite_difference(compile(sys), pulse, target, model, fd_step,
                                    seed);
}

OptimizationOutcome optimize(const CompiledSystem& sys, const TargetGate& target,
                             const PulseGrid& init, const OptimizerConfig& cfg) {
  cfg.validate();
  const LocalFidelityEvaluator eval(target);
  Measurer meas{&target, &eval, cfg.measurement, 0};
  if (meas.model.seed == 0) meas.model.seed = cfg.seed;

  const bool track_exact =
      cfg.f_exact == TraceFExact::on ||
      (cfg.f_exact == TraceFExact::automatic && target.n <= 7);
  CMat u_full;
  if (track_exact) u_full = target.full_unitary();

  OptimizationOutcome out;
  out.n_fids = cfg.gradient_mode == GradientMode::analytic
                   ? 1
                   : 1 + static_cast<long>(init.n_ctrl) * init.n_ts;
  out.final_pulse = init;

  PulseGrid pulse = init;
  PropagationResult prop = propagate(sys, pulse);
  double f_meas = meas.estimator(prop.total);

  auto record = [&](long iter, double measured, const CMat& v) {
    TraceRecord rec;
    rec.iteration = iter;
    rec.f_le_measured = measured;
    rec.f_le_exact = eval.local_estimator(v);
    rec.f_exact = track_exact ? gate_fidelity_unitary(v, u_full)
                              : std::numeric_limits<double>::quiet_NaN();
    out.trace.push_back(rec);
  };
  record(0, f_meas, prop.total);

  long upds = 0;
  double step_init = cfg.ls_init_step;
  Eigen::MatrixXd prev_amplitudes, prev_grad;
  std::vector<double> best_history{f_meas};

  auto finish = [&](bool success) {
    out.success = success;
    out.n_upds = upds;
    out.final_pulse = pulse;
    return out;
  };

  while (true) {
    if (!std::isfinite(f_meas)) return finish(false);
    if (f_meas >= cfg.f_targ) return finish(true);
    if (upds >= cfg.max_upds) return finish(false);

    Eigen::MatrixXd grad;
    if (cfg.gradient_mode == GradientMode::analytic) {
      grad = gradient_analytic(sys, prop, eval);
    } else {
      FdGradient fd = gradient_finite_difference(
          sys, pulse, target, meas.model, cfg.effective_fd_step(),
          derive_seed(meas.model.seed, meas.counter));
      meas.counter += fd.evals;
      grad = std::move(fd.grad);
    }

    const double g2 = grad.squaredNorm();
    bool accepted = false;
    PulseGrid candidate = pulse;
    double f_candidate = f_meas;
    if (g2 > 0.0 && std::isfinite(g2)) {
      // spectral (Barzilai-Borwein) trial step from the last accepted move;
      // the Armijo backtracking below safeguards it
      double trial = step_init;
      if (prev_grad.size() > 0) {
        const Eigen::MatrixXd s = pulse.amplitudes - prev_amplitudes;
        const Eigen::MatrixXd y = prev_grad - grad;
        const double sy = (s.array() * y.array()).sum();
        if (sy > 0.0) {
          const double bb = s.squaredNorm() / sy;
          if (std::isfinite(bb) && bb > 0.0)
            trial = std::min(bb, cfg.ls_max_step);
        }
      }
      double step = trial;
      for (int bt = 0; bt < cfg.ls_max_backtracks; ++bt) {
        candidate.amplitudes = pulse.amplitudes + step * grad;
        const CMat v = evolve_total(sys, candidate);
        const double f = meas.estimator(v);
        if (std::isfinite(f) && f >= f_meas + cfg.armijo_c1 * step * g2) {
          accepted = true;
          f_candidate = f;
          step_init = std::min(cfg.ls_growth * step, cfg.ls_max_step);
          break;
        }
        step *= cfg.ls_contraction;
      }
    }
    if (!accepted) step_init = cfg.ls_init_step;

    ++upds;
    if (accepted) {
      prev_amplitudes = pulse.amplitudes;
      prev_grad = grad;
      pulse = candidate;
      prop = propagate(sys, pulse);
      f_meas = f_candidate;
    }
    // a fully rejected step still counts as an update and feeds the stall
    // accounting
    best_history.push_back(std::max(best_history.back(), f_meas));
    record(upds, f_meas, prop.total);

    if (upds >= cfg.stall_window &&
        best_history[upds] - best_history[upds - cfg.stall_window] <
            cfg.stall_eps)
      return finish(false);
  }
}

OptimizationOutcome optimize(const SpinSystem& sys, const TargetGate& target,
                             const PulseGrid& init, const OptimizerConfig& cfg) {
  return optimize(compile(sys), target, init, cfg);
}

}  // namespace insitu
