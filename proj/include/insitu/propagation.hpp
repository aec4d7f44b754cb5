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

#include "insitu/system.hpp"

namespace insitu {

// Piecewise-constant control amplitudes: one row per control Hamiltonian,
// one column per time slot of width t_gate / n_ts.
struct PulseGrid {
  int n_ctrl = 0;
  int n_ts = 0;
  double t_gate = 0.0;
  Eigen::MatrixXd amplitudes;  // n_ctrl x n_ts

  PulseGrid() = default;
  PulseGrid(int n_controls, int n_timeslots, double gate_time);
  PulseGrid(double gate_time, Eigen::MatrixXd amps);

  double dt() const { return t_gate / n_ts; }
  void validate() const;
};

// Amplitudes i.i.d. uniform on [-1, 1], deterministic per seed.
PulseGrid random_initial_pulse(int n_ctrl, int n_ts, double t_gate,
                               std::uint64_t seed);

// Everything the gradient needs from one forward evolution. Slot k propagator
// is exp(-i(H_drift + sum_c u[c][k] H_c) dt); the total is
// U_{n_ts} * ... * U_2 * U_1 (first slot acts first).
struct PropagationResult {
  CMat total;
  std::vector<CMat> slot_propagators;           // U_1 .. U_{n_ts}
  std::vector<CMat> forward_partials;           // F_k = U_k..U_1, F_0 = I
  std::vector<CMat> backward_partials;          // B_k = U_{n_ts}..U_{k+1}
  std::vector<CMat> slot_eigvecs;               // eigenvectors of each slot H
  std::vector<Eigen::VectorXd> slot_eigvals;    // eigenvalues of each slot H
  double dt = 0.0;
};

PropagationResult propagate(const CompiledSystem& sys, const PulseGrid& pulse);
PropagationResult propagate(const SpinSystem& sys, const PulseGrid& pulse);

// Total unitary only; used for fidelity evaluations where the per-slot caches
// are not needed.
CMat evolve_total(const CompiledSystem& sys, const PulseGrid& pulse);

}  // namespace insitu
