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

#include "insitu/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace insitu {

PulseGrid::PulseGrid(int n_controls, int n_timeslots, double gate_time)
    : n_ctrl(n_controls), n_ts(n_timeslots), t_gate(gate_time),
      amplitudes(Eigen::MatrixXd::Zero(n_controls, n_timeslots)) {
  validate();
}

PulseGrid::PulseGrid(double gate_time, Eigen::MatrixXd amps)
    : n_ctrl(static_cast<int>(amps.rows())),
      n_ts(static_cast<int>(amps.cols())), t_gate(gate_time),
      amplitudes(std::move(amps)) {
  validate();
}

void PulseGrid::validate() const {
  if (n_ctrl < 1 || n_ts < 1)
    throw std::invalid_argument("PulseGrid: need at least one control and one slot");
  if (!(t_gate > 0.0) || !std::isfinite(t_gate))
    throw std::invalid_argument("PulseGrid: gate time must be positive");
  if (amplitudes.rows() != n_ctrl || amplitudes.cols() != n_ts)
    throw std::invalid_argument("PulseGrid: amplitude array shape mismatch");
  if (!amplitudes.allFinite())
    throw std::invalid_argument("PulseGrid: non-finite amplitude");
}

PulseGrid random_initial_pulse(int n_ctrl, int n_ts, double t_gate,
                               std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd a(n_ctrl, n_ts);
  for (int c = 0; c < n_ctrl; ++c)
    for (int k = 0; k < n_ts; ++k) a(c, k) = rng.uniform(-1.0, 1.0);
  return PulseGrid(t_gate, std::move(a));
}

namespace {

void check_dims(const CompiledSystem& sys, const PulseGrid& pulse) {
  pulse.validate();
  if (static_cast<std::size_t>(pulse.n_ctrl) != sys.controls.size())
    throw std::invalid_argument("propagate: pulse rows do not match control count");
  for (const CMat& c : sys.controls)
    if (c.rows() != sys.drift.rows() || c.cols() != sys.drift.cols())
      throw std::invalid_argument("propagate: control dimension mismatch");
}

CMat slot_hamiltonian(const CompiledSystem& sys, const PulseGrid& pulse, int k) {
  CMat h = sys.drift;
  for (int c = 0; c < pulse.n_ctrl; ++c) h += pulse.amplitudes(c, k) * sys.controls[c];
  return h;
}

}  // namespace

PropagationResult propagate(const CompiledSystem& sys, const PulseGrid& pulse) {
  check_dims(sys, pulse);
  const int nts = pulse.n_ts;
  const double dt = pulse.dt();
  const Eigen::Index dim = sys.drift.rows();

  PropagationResult r;
  r.dt = dt;
  r.slot_propagators.resize(nts);
  r.slot_eigvecs.resize(nts);
  r.slot_eigvals.resize(nts);
  for (int k = 0; k < nts; ++k) {
    Eigen::SelfAdjointEigenSolver<CMat> es(slot_hamiltonian(sys, pulse, k));
    CVec phases =
        (cxd(0, -dt) * es.eigenvalues().cast<cxd>().array()).exp();
    r.slot_eigvecs[k] = es.eigenvectors();
    r.slot_eigvals[k] = es.eigenvalues();
    r.slot_propagators[k] =
        r.slot_eigvecs[k] * phases.asDiagonal() * r.slot_eigvecs[k].adjoint();
  }

  r.forward_partials.resize(nts + 1);
  r.forward_partials[0] = CMat::Identity(dim, dim);
  for (int k = 1; k <= nts; ++k)
    r.forward_partials[k].noalias() =
        r.slot_propagators[k - 1] * r.forward_partials[k - 1];

  r.backward_partials.resize(nts + 1);
  r.backward_partials[nts] = CMat::Identity(dim, dim);
  for (int k = nts - 1; k >= 0; --k)
    r.backward_partials[k].noalias() =
        r.backward_partials[k + 1] * r.slot_propagators[k];

  r.total = r.forward_partials[nts];
  return r;
}

PropagationResult propagate(const SpinSystem& sys, const PulseGrid& pulse) {
  return propagate(compile(sys), pulse);
}

CMat evolve_total(const CompiledSystem& sys, const PulseGrid& pulse) {
  check_dims(sys, pulse);
  const int nts = pulse.n_ts;
  const double dt = pulse.dt();
  const Eigen::Index dim = sys.drift.rows();
  CMat total = CMat::Identity(dim, dim);
  for (int k = 0; k < nts; ++k) {
    Eigen::SelfAdjointEigenSolver<CMat> es(slot_hamiltonian(sys, pulse, k));
    CVec phases =
        (cxd(0, -dt) * es.eigenvalues().cast<cxd>().array()).exp();
    total = es.eigenvectors() * phases.asDiagonal() *
            (es.eigenvectors().adjoint() * total);
  }
  return total;
}

}  // namespace insitu
