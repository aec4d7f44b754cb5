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

#include "insitu/target.hpp"

#include <stdexcept>

namespace insitu {

TargetGate::TargetGate(SubsystemPartition part, std::vector<CMat> facs)
    : n(part.n), partition(std::move(part)), factors(std::move(facs)) {
  if (factors.size() != partition.groups.size())
    throw std::invalid_argument("TargetGate: one factor per group required");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].rows() != partition.group_dim(i) ||
        factors[i].cols() != partition.group_dim(i))
      throw std::invalid_argument("TargetGate: factor dimension does not match group");
    if (!is_unitary(factors[i], 1e-10))
      throw std::invalid_argument("TargetGate: factor is not unitary");
  }
}

CMat TargetGate::full_unitary() const {
  const std::int64_t dim = std::int64_t{1} << n;
  CMat u = CMat::Identity(dim, dim);
  for (std::size_t i = 0; i < factors.size(); ++i)
    u = embed(factors[i], partition.groups[i], n) * u;
  return u;
}

CMat cnot_matrix(bool control_first) {
  CMat u = CMat::Zero(4, 4);
  if (control_first) {
    // |c t> basis, control is the more significant bit.
    u(0, 0) = 1; u(1, 1) = 1; u(3, 2) = 1; u(2, 3) = 1;
  } else {
    u(0, 0) = 1; u(3, 1) = 1; u(2, 2) = 1; u(1, 3) = 1;
  }
  return u;
}

TargetGate cnot_target(int n, int control, int target) {
  if (control == target)
    throw std::invalid_argument("cnot_target: control and target must differ");
  if (control < 0 || control >= n || target < 0 || target >= n)
    throw std::invalid_argument("cnot_target: qubit index out of range");
  std::vector<std::vector<int>> groups;
  std::vector<CMat> factors;
  const int lo = std::min(control, target);
  const int hi = std::max(control, target);
  for (int q = 0; q < n; ++q) {
    if (q == lo) {
      groups.push_back({lo, hi});
      factors.push_back(cnot_matrix(control == lo));
    } else if (q != hi) {
      groups.push_back({q});
      factors.push_back(CMat::Identity(2, 2));
    }
  }
  return TargetGate(SubsystemPartition(n, std::move(groups)), std::move(factors));
}

}  // namespace insitu
