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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "insitu/rng.hpp"

namespace insitu {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Convention used everywhere: qubit 0 is the leftmost (most significant)
// tensor factor, so qubit q owns bit (n-1-q) of a basis-state index.

enum class Axis { x, y, z };

bool is_hermitian(const CMat& a, double tol = 1e-12);
bool is_unitary(const CMat& a, double tol = 1e-10);

// Largest singular value; computed from the eigenvalues when `a` is Hermitian.
double spectral_norm(const CMat& a);

// I x ... x sigma_axis x ... x I on n qubits, with the Pauli on `qubit`.
CMat pauli(Axis axis, int qubit, int n);

CMat kron(const CMat& a, const CMat& b);

// exp(scale * h). Hermitian inputs go through an eigendecomposition (unitary
// output up to rounding when scale is imaginary); anything else falls back to
// scaling-and-squaring Pade.
CMat matrix_exponential(const CMat& h, cxd scale);

// Reduced operator on the qubits in `keep` (ascending positions, which become
// the tensor order of the result). Keeping every qubit returns rho unchanged.
CMat partial_trace(const CMat& rho, const std::vector<int>& keep, int n_qubits);

// Same reduction for a pure state without forming |psi><psi|.
CMat partial_trace_pure(const CVec& psi, const std::vector<int>& keep,
                        int n_qubits);

// Normalized Choi vector of a unitary: (U x I)(1/sqrt(d)) sum_k |kk>, laid out
// as (system block x copy block), i.e. element [i*d + k] = U(i,k)/sqrt(d).
CVec choi_state(const CMat& u);

// Gaussian random Hermitian matrix rescaled to the requested spectral norm.
// Deterministic per seed.
CMat random_hamiltonian(int n, double norm, std::uint64_t seed);

// Haar-distributed unitary (QR of a Ginibre matrix with phase fixing).
CMat random_unitary(int dim, Rng& rng);

// Apply an operator that acts on the qubits listed in `positions` (ascending)
// to a full-register state.
CVec apply_local(const CVec& state, const CMat& op,
                 const std::vector<int>& positions, int n_qubits);

// Dense embedding of a local operator into the full register.
CMat embed(const CMat& op, const std::vector<int>& positions, int n_qubits);

// Disjoint qubit groups covering {0..n-1}; the subsystems of a tensor-product
// target gate.
struct SubsystemPartition {
  int n = 0;
  std::vector<std::vector<int>> groups;

  SubsystemPartition() = default;
  SubsystemPartition(int n_qubits, std::vector<std::vector<int>> g);

  static SubsystemPartition singletons(int n_qubits);

  int group_dim(std::size_t i) const { return 1 << groups[i].size(); }
  std::size_t size() const { return groups.size(); }
};

// Precomputed index maps for one keep/env split of an n-qubit register.
// keep[j] is the j-th most significant qubit of the reduced register.
struct IndexSplit {
  std::vector<std::uint64_t> kept;  // reduced index -> full-index contribution
  std::vector<std::uint64_t> env;   // environment index -> contribution
  IndexSplit(const std::vector<int>& keep, int n_qubits);
};

}  // namespace insitu
