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

#include "insitu/target.hpp"

namespace insitu {

// |Tr(v^dag u) / d|^2. Phase invariant; 1 iff v = u up to a global phase.
double gate_fidelity_unitary(const CMat& v, const CMat& u);

// Overlap of the Choi states |<choi(u)|choi(v)>|^2. Agrees with
// gate_fidelity_unitary; kept as an independently computed route.
double choi_fidelity(const CMat& v, const CMat& u);

// Per-group fidelities F(M_i, U_i): the reduced map of v on group i (all
// other groups fed the maximally mixed state) against the target factor.
// Computed by partial-tracing the Choi state of v onto the group's system
// and copy qubits.
class LocalFidelityEvaluator {
 public:
  explicit LocalFidelityEvaluator(const TargetGate& target);

  std::size_t group_count() const { return groups_.size(); }
  int system_dim() const { return dim_; }

  std::vector<double> local_fidelities(const CMat& v) const;
  double local_estimator(const CMat& v) const;

  // sum_i P_i |choi(v)>, reshaped to d x d (row index = system block).
  // The analytic gradient of the local estimator contracts slot-propagator
  // derivatives against this matrix.
  CMat estimator_cogradient(const CMat& v) const;

  static double estimator_from_locals(const std::vector<double>& f);

  struct Group {
    std::vector<int> doubled_positions;  // system qubits then copy qubits
    CVec choi_factor;                    // Choi state of the target factor
    CMat projector;                      // |choi_factor><choi_factor|
  };
  const std::vector<Group>& groups() const { return groups_; }

 private:
  int n_ = 0;
  int dim_ = 0;
  std::vector<Group> groups_;
};

std::vector<double> local_fidelities(const CMat& v, const TargetGate& target);

// F_LE = 1 - sum_i (1 - F(M_i, U_i)); a lower bound on the full gate fidelity.
double local_estimator(const CMat& v, const TargetGate& target);

// Nearest multiple of a_num, ties to the even multiple; a_num = 0 passes f
// through unchanged.
double quantize(double f, double a_num);

enum class MeasureMode { exact, quantized, sampled };
enum class CertifyProtocol { sequential, parallel };

// How the local fidelities are read out inside the optimization loop: exact
// values, values rounded to a_num, or shot-based certification estimates
// (also rounded to a_num, emulating a finite-precision record).
struct MeasurementModel {
  MeasureMode mode = MeasureMode::exact;
  double a_num = 0.0;
  long shots = 10000;
  CertifyProtocol protocol = CertifyProtocol::sequential;
  std::uint64_t seed = 0;

  void validate() const;
};

}  // namespace insitu
