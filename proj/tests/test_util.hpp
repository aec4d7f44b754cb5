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

#include <numeric>
#include <vector>

#include "insitu/fidelity.hpp"

namespace insitu::testutil {

// Random tensor-product target: qubits shuffled, then grouped into blocks of
// one or two with Haar factors. Groups may be non-contiguous.
inline TargetGate random_product_target(int n, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.uniform_int(i + 1)]);

  std::vector<std::vector<int>> groups;
  std::vector<CMat> factors;
  std::size_t at = 0;
  while (at < order.size()) {
    const bool pair = at + 1 < order.size() && rng.uniform01() < 0.5;
    if (pair) {
      groups.push_back({order[at], order[at + 1]});
      at += 2;
    } else {
      groups.push_back({order[at]});
      at += 1;
    }
    factors.push_back(random_unitary(1 << groups.back().size(), rng));
  }
  return TargetGate(SubsystemPartition(n, std::move(groups)), std::move(factors));
}

// Operational-definition oracle for the local fidelities: for each group,
// build the Choi state of the reduced map by explicitly averaging over the
// complement's computational basis states, then overlap with the factor's
// Choi state. Independent of the partial-trace-of-Choi-state implementation.
inline std::vector<double> local_fidelities_operational(const CMat& v,
                                                        const TargetGate& t) {
  const int n = t.n;
  std::vector<double> out;
  for (std::size_t gi = 0; gi < t.partition.size(); ++gi) {
    const std::vector<int>& group = t.partition.groups[gi];
    const int dg = 1 << group.size();
    const IndexSplit split(group, n);
    const std::size_t d_comp = split.env.size();

    // rho_op[(p k), (q k')] = (1/dg) M(|k><k'|)[p, q]
    CMat rho_op = CMat::Zero(dg * dg, dg * dg);
    for (int k = 0; k < dg; ++k)
      for (int kp = 0; kp < dg; ++kp) {
        CMat m_kkp = CMat::Zero(dg, dg);
        for (std::size_t m = 0; m < d_comp; ++m) {
          const CVec a = v.col(split.kept[k] + split.env[m]);
          const CVec b = v.col(split.kept[kp] + split.env[m]);
          // trace out the complement of |a><b|
          for (int p = 0; p < dg; ++p)
            for (int q = 0; q < dg; ++q) {
              cxd s = 0.0;
              for (std::uint64_t e : split.env)
                s += a(split.kept[p] + e) * std::conj(b(split.kept[q] + e));
              m_kkp(p, q) += s;
            }
        }
        m_kkp /= static_cast<double>(d_comp);
        for (int p = 0; p < dg; ++p)
          for (int q = 0; q < dg; ++q)
            rho_op(p * dg + k, q * dg + kp) =
                m_kkp(p, q) / static_cast<double>(dg);
      }

    const CVec psi = choi_state(t.factors[gi]);
    out.push_back(std::real(psi.dot(rho_op * psi)));
  }
  return out;
}

}  // namespace insitu::testutil
