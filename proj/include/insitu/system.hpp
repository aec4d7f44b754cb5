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
#include <string>
#include <utility>
#include <vector>

#include "insitu/operator.hpp"

namespace insitu {

enum class Topology { chain, ring, star, fully_connected };
enum class Coupling { ising, heisenberg };

// Deterministic edge order: chain (i,i+1) ascending; ring appends (n-1,0);
// star is (0,i) for i >= 1; fully_connected is lexicographic (i,j), i < j.
std::vector<std::pair<int, int>> topology_edges(Topology t, int n);

const char* to_string(Topology t);
const char* to_string(Coupling c);

// An always-on interaction graph plus per-qubit x/y drives.
struct SpinSystem {
  int n = 2;
  Topology topology = Topology::chain;
  Coupling coupling = Coupling::ising;
  std::vector<double> strengths;  // one per edge, topology_edges() order

  SpinSystem(int n_qubits, Topology topo, Coupling coup, double strength = 1.0);
  SpinSystem(int n_qubits, Topology topo, Coupling coup,
             std::vector<double> edge_strengths);

  std::vector<std::pair<int, int>> edges() const {
    return topology_edges(topology, n);
  }
};

// Sum over edges of strength * coupling term (ZZ for Ising, XX+YY+ZZ for
// Heisenberg).
CMat build_drift(const SpinSystem& sys);

// 2n drive operators ordered [x0, y0, x1, y1, ...]; defines N_ctrl = 2n.
std::vector<CMat> build_controls(const SpinSystem& sys);

// Per-edge strengths redrawn i.i.d. uniform on [0.5, 1.5].
SpinSystem randomize_strengths(SpinSystem sys, std::uint64_t seed);

// Dense Hamiltonians cached once per system. Tests may build one directly
// (e.g. a single qubit with no drift), which SpinSystem itself disallows.
struct CompiledSystem {
  int n = 0;  // register size in qubits
  CMat drift;
  std::vector<CMat> controls;

  int dim() const { return 1 << n; }
};

CompiledSystem compile(const SpinSystem& sys);

}  // namespace insitu
