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

#include "insitu/fidelity.hpp"
#include "insitu/propagation.hpp"

namespace insitu {

// Shot-based estimates of the per-group local fidelities, produced by
// emulating preparation / evolution / Pauli-basis measurement runs.
//
// Estimator algebra: F(M_i, U_i) = d^-3 sum_{k,m} a_km Tr[M_i(P_k) P_m] with
// a_km = Tr(P_m U_i P_k U_i^dag)/d, and each P_k expanded over its product
// eigenstates. Preparations are Pauli product eigenstates on the probed
// group; measurements are Pauli product bases. Unbiased for any factor, and
// for Clifford factors every string P_k maps to a single P_m.
struct CertificationResult {
  std::vector<double> values;
  std::vector<double> stderrs;
  long settings_count = 0;  // enumerated prep/measure combinations; see .cpp
  long total_runs = 0;
};

// One subsystem at a time: the probed group is prepared in each eigenstate of
// each of its Pauli strings while the rest of the register is prepared in a
// random computational basis state (maximally mixed on average). `shots` is
// the per-subsystem run budget, split evenly over that group's settings.
CertificationResult certify_sequential(const SpinSystem& sys,
                                       const PulseGrid& pulse,
                                       const TargetGate& target, long shots,
                                       std::uint64_t seed);

// All subsystems at once: every group independently draws a random Pauli
// eigenstate preparation and a measurement basis each run, so one run feeds
// every group's estimator. `shots` is the total number of runs; the number of
// distinct settings depends only on the largest group, not on n.
CertificationResult certify_parallel(const SpinSystem& sys,
                                     const PulseGrid& pulse,
                                     const TargetGate& target, long shots,
                                     std::uint64_t seed);

// Same estimators driven by an already-computed total unitary.
CertificationResult certify_unitary(const CMat& v, const TargetGate& target,
                                    CertifyProtocol protocol, long shots,
                                    std::uint64_t seed);

// Local fidelities as seen through a MeasurementModel: exact values, values
// rounded to a_num, or certification estimates (rounded to a_num as well).
std::vector<double> measure_local_fidelities(const CMat& v,
                                             const TargetGate& target,
                                             const LocalFidelityEvaluator& eval,
                                             const MeasurementModel& model,
                                             std::uint64_t call_seed);

}  // namespace insitu
