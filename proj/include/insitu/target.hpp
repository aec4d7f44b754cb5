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

#include <vector>

#include "insitu/operator.hpp"

namespace insitu {

// Tensor-product factorization of a goal unitary: one unitary factor per
// partition group. Groups need not be contiguous on the qubit line; each
// factor acts on its group's qubits in ascending order.
struct TargetGate {
  int n = 0;
  SubsystemPartition partition;
  std::vector<CMat> factors;

  TargetGate() = default;
  TargetGate(SubsystemPartition part, std::vector<CMat> facs);

  // Product of the embedded factors (they commute, acting on disjoint qubits).
  CMat full_unitary() const;
};

// CNOT on {control, target} and identity on every other qubit.
TargetGate cnot_target(int n, int control, int target);

// 4x4 CNOT; control_first selects which of the two group qubits (ascending
// order) is the control.
CMat cnot_matrix(bool control_first);

}  // namespace insitu
