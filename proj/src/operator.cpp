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

#include "insitu/operator.hpp"

#include <algorithm>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace insitu {

bool is_hermitian(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  CMat g = a.adjoint() * a;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff() <= tol;
}

double spectral_norm(const CMat& a) {
  if (is_hermitian(a, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

CMat pauli(Axis axis, int qubit, int n) {
  if (n < 1) throw std::invalid_argument("pauli: qubit count must be positive");
  if (qubit < 0 || qubit >= n)
    throw std::out_of_range("pauli: qubit index out of range");
  const std::int64_t dim = std::int64_t{1} << n;
  const std::int64_t mask = std::int64_t{1} << (n - 1 - qubit);
  CMat m = CMat::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    switch (axis) {
      case Axis::x:
        m(col ^ mask, col) = 1.0;
        break;
      case Axis::y:
        m(col ^ mask, col) = (col & mask) ? cxd(0, -1) : cxd(0, 1);
        break;
      case Axis::z:
        m(col, col) = (col & mask) ? -1.0 : 1.0;
        break;
    }
  }
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat matrix_exponential(const CMat& h, cxd scale) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  if (!h.allFinite())
    throw std::invalid_argument("matrix_exponential: non-finite entries");
  if (is_hermitian(h, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    CVec phases = (scale * es.eigenvalues().cast<cxd>().array()).exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }
  CMat a = scale * h;
  return a.exp();
}

IndexSplit::IndexSplit(const std::vector<int>& keep, int n_qubits) {
  std::vector<int> env_pos;
  {
    std::vector<bool> in_keep(n_qubits, false);
    for (int p : keep) {
      if (p < 0 || p >= n_qubits)
        throw std::invalid_argument("partial_trace: keep index out of range");
      if (in_keep[p])
        throw std::invalid_argument("partial_trace: duplicate keep index");
      in_keep[p] = true;
    }
    for (int p = 0; p < n_qubits; ++p)
      if (!in_keep[p]) env_pos.push_back(p);
  }
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());

  const std::size_t nk = keep_sorted.size();
  const std::size_t ne = env_pos.size();
  kept.assign(std::size_t{1} << nk, 0);
  env.assign(std::size_t{1} << ne, 0);
  for (std::size_t a = 0; a < kept.size(); ++a) {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < nk; ++j)
      if (a & (std::size_t{1} << (nk - 1 - j)))
        idx |= std::uint64_t{1} << (n_qubits - 1 - keep_sorted[j]);
    kept[a] = idx;
  }
  for (std::size_t e = 0; e < env.size(); ++e) {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < ne; ++j)
      if (e & (std::size_t{1} << (ne - 1 - j)))
        idx |= std::uint64_t{1} << (n_qubits - 1 - env_pos[j]);
    env[e] = idx;
  }
}

CMat partial_trace(const CMat& rho, const std::vector<int>& keep, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("partial_trace: dimension does not match qubit count");
  IndexSplit split(keep, n_qubits);
  const std::size_t kd = split.kept.size();
  CMat out = CMat::Zero(kd, kd);
  for (std::size_t a = 0; a < kd; ++a)
    for (std::size_t b = 0; b < kd; ++b) {
      cxd sum = 0.0;
      for (std::uint64_t e : split.env)
        sum += rho(split.kept[a] + e, split.kept[b] + e);
      out(a, b) = sum;
    }
  return out;
}

CMat partial_trace_pure(const CVec& psi, const std::vector<int>& keep,
                        int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  if (psi.size() != dim)
    throw std::invalid_argument("partial_trace_pure: dimension does not match qubit count");
  IndexSplit split(keep, n_qubits);
  const std::size_t kd = split.kept.size();
  CMat out = CMat::Zero(kd, kd);
  for (std::uint64_t e : split.env)
    for (std::size_t a = 0; a < kd; ++a) {
      const cxd va = psi(split.kept[a] + e);
      if (va == cxd(0.0)) continue;
      for (std::size_t b = 0; b < kd; ++b)
        out(a, b) += va * std::conj(psi(split.kept[b] + e));
    }
  return out;
}

CVec choi_state(const CMat& u) {
  if (!is_unitary(u, 1e-10))
    throw std::invalid_argument("choi_state: input is not unitary");
  const Eigen::Index d = u.rows();
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  CVec v(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k) v(i * d + k) = u(i, k) * norm;
  return v;
}

CMat random_hamiltonian(int n, double norm, std::uint64_t seed) {
  if (norm <= 0.0)
    throw std::invalid_argument("random_hamiltonian: norm must be positive");
  const std::int64_t dim = std::int64_t{1} << n;
  Rng rng(seed);
  CMat m(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i)
    for (std::int64_t j = 0; j < dim; ++j) m(i, j) = cxd(rng.normal(), rng.normal());
  CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  const double s = es.eigenvalues().cwiseAbs().maxCoeff();
  return h * (norm / s);
}

CMat random_unitary(int dim, Rng& rng) {
  CMat z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = cxd(rng.normal(), rng.normal());
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ() * CMat::Identity(dim, dim);
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    cxd rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0) ? rjj / a : cxd(1.0);
  }
  return q;
}

CVec apply_local(const CVec& state, const CMat& op,
                 const std::vector<int>& positions, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  if (state.size() != dim)
    throw std::invalid_argument("apply_local: state dimension mismatch");
  IndexSplit split(positions, n_qubits);
  const std::size_t kd = split.kept.size();
  if (op.rows() != static_cast<Eigen::Index>(kd) ||
      op.cols() != static_cast<Eigen::Index>(kd))
    throw std::invalid_argument("apply_local: operator dimension mismatch");
  CVec out(dim);
  CVec sub(kd), res(kd);
  for (std::uint64_t e : split.env) {
    for (std::size_t a = 0; a < kd; ++a) sub(a) = state(split.kept[a] + e);
    res.noalias() = op * sub;
    for (std::size_t a = 0; a < kd; ++a) out(split.kept[a] + e) = res(a);
  }
  return out;
}

CMat embed(const CMat& op, const std::vector<int>& positions, int n_qubits) {
  IndexSplit split(positions, n_qubits);
  const std::size_t kd = split.kept.size();
  if (op.rows() != static_cast<Eigen::Index>(kd) ||
      op.cols() != static_cast<Eigen::Index>(kd))
    throw std::invalid_argument("embed: operator dimension mismatch");
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  CMat out = CMat::Zero(dim, dim);
  for (std::uint64_t e : split.env)
    for (std::size_t a = 0; a < kd; ++a)
      for (std::size_t b = 0; b < kd; ++b)
        out(split.kept[a] + e, split.kept[b] + e) = op(a, b);
  return out;
}

SubsystemPartition::SubsystemPartition(int n_qubits,
                                       std::vector<std::vector<int>> g)
    : n(n_qubits), groups(std::move(g)) {
  std::vector<bool> seen(n, false);
  for (auto& grp : groups) {
    if (grp.empty())
      throw std::invalid_argument("SubsystemPartition: empty group");
    std::sort(grp.begin(), grp.end());
    for (int q : grp) {
      if (q < 0 || q >= n)
        throw std::invalid_argument("SubsystemPartition: qubit index out of range");
      if (seen[q])
        throw std::invalid_argument("SubsystemPartition: groups are not disjoint");
      seen[q] = true;
    }
  }
  for (int q = 0; q < n; ++q)
    if (!seen[q])
      throw std::invalid_argument("SubsystemPartition: groups do not cover all qubits");
}

SubsystemPartition SubsystemPartition::singletons(int n_qubits) {
  std::vector<std::vector<int>> g;
  for (int q = 0; q < n_qubits; ++q) g.push_back({q});
  return SubsystemPartition(n_qubits, std::move(g));
}

}  // namespace insitu
