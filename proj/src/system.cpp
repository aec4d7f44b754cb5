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

#include "insitu/system.hpp"

#include <cmath>
#include <stdexcept>

namespace insitu {

std::vector<std::pair<int, int>> topology_edges(Topology t, int n) {
  if (n < 2) throw std::invalid_argument("topology_edges: need at least 2 qubits");
  std::vector<std::pair<int, int>> edges;
  switch (t) {
    case Topology::chain:
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case Topology::ring:
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 1, 0);
      break;
    case Topology::star:
      for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
      break;
    case Topology::fully_connected:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      break;
  }
  return edges;
}

const char* to_string(Topology t) {
  switch (t) {
    case Topology::chain: return "chain";
    case Topology::ring: return "ring";
    case Topology::star: return "star";
    case Topology::fully_connected: return "fully_connected";
  }
  return "?";
}

const char* to_string(Coupling c) {
  return c == Coupling::ising ? "ising" : "heisenberg";
}

SpinSystem::SpinSystem(int n_qubits, Topology topo, Coupling coup,
                       double strength)
    : SpinSystem(n_qubits, topo, coup,
                 std::vector<double>(topology_edges(topo, n_qubits).size(),
                                     strength)) {}

SpinSystem::SpinSystem(int n_qubits, Topology topo, Coupling coup,
                       std::vector<double> edge_strengths)
    : n(n_qubits), topology(topo), coupling(coup),
      strengths(std::move(edge_strengths)) {
  if (n < 2) throw std::invalid_argument("SpinSystem: need at least 2 qubits");
  const auto e = edges();
  if (strengths.size() != e.size())
    throw std::invalid_argument("SpinSystem: one strength per edge required");
  for (double s : strengths)
    if (!std::isfinite(s) || s == 0.0)
      throw std::invalid_argument("SpinSystem: strengths must be finite and nonzero");
}

CMat build_drift(const SpinSystem& sys) {
  const std::int64_t dim = std::int64_t{1} << sys.n;
  CMat h = CMat::Zero(dim, dim);
  const auto edges = sys.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    if (sys.coupling == Coupling::ising) {
      h += sys.strengths[e] * (pauli(Axis::z, i, sys.n) * pauli(Axis::z, j, sys.n));
    } else {
      h += sys.strengths[e] *
           (pauli(Axis::x, i, sys.n) * pauli(Axis::x, j, sys.n) +
            pauli(Axis::y, i, sys.n) * pauli(Axis::y, j, sys.n) +
            pauli(Axis::z, i, sys.n) * pauli(Axis::z, j, sys.n));
    }
  }
  return h;
}

std::vector<CMat> build_controls(const SpinSystem& sys) {
  std::vector<CMat> c;
  c.reserve(2 * sys.n);
  for (int q = 0; q < sys.n; ++q) {
    c.push_back(pauli(Axis::x, q, sys.n));
    c.push_back(pauli(Axis::y, q, sys.n));
  }
  return c;
}

SpinSystem randomize_strengths(SpinSystem sys, std::uint64_t seed) {
  Rng rng(seed);
  for (double& s : sys.strengths) s = rng.uniform(0.5, 1.5);
  return sys;
}

CompiledSystem compile(const SpinSystem& sys) {
  return CompiledSystem{sys.n, build_drift(sys), build_controls(sys)};
}

}  // namespace insitu
