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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "insitu/system.hpp"

using namespace insitu;

namespace {

double max_abs(const CMat& a) { return a.cwiseAbs().maxCoeff(); }

CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }

// dimension of the real span of the generated Lie algebra; Gram-Schmidt over
// the Hilbert-Schmidt inner product
int lie_algebra_rank(std::vector<CMat> generators) {
  std::vector<CMat> basis;
  auto try_add = [&basis](CMat m) {
    for (const CMat& b : basis) {
      const cxd overlap = (b.adjoint() * m).trace() / (b.adjoint() * b).trace();
      m -= overlap * b;
    }
    if (m.cwiseAbs().maxCoeff() > 1e-9) {
      basis.push_back(m);
      return true;
    }
    return false;
  };
  for (const CMat& g : generators) try_add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t sz = basis.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = i + 1; j < sz; ++j)
        if (try_add(cxd(0, 1) * commutator(basis[i], basis[j]))) grew = true;
  }
  return static_cast<int>(basis.size());
}

}  // namespace

TEST_CASE("topology edge lists") {
  CHECK(topology_edges(Topology::chain, 5) ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(topology_edges(Topology::ring, 5).size() == 5);
  CHECK(topology_edges(Topology::ring, 5).back() == std::pair<int, int>{4, 0});
  CHECK(topology_edges(Topology::star, 5) ==
        std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(topology_edges(Topology::fully_connected, 5).size() == 10);
  CHECK_THROWS_AS(topology_edges(Topology::chain, 1), std::invalid_argument);
}

TEST_CASE("two-qubit ising chain drift is ZZ") {
  const SpinSystem sys(2, Topology::chain, Coupling::ising);
  const CMat drift = build_drift(sys);
  CHECK(max_abs(drift - pauli(Axis::z, 0, 2) * pauli(Axis::z, 1, 2)) == 0.0);
}

TEST_CASE("three-qubit ising ring spectrum") {
  // oracle: direct diagonalization of the 8x8 drift
  const SpinSystem sys(3, Topology::ring, Coupling::ising);
  Eigen::SelfAdjointEigenSolver<CMat> es(build_drift(sys), Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 8);
  std::sort(ev.begin(), ev.end());
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ev[i] + 1.0) < 1e-12);
  for (int i = 6; i < 8; ++i) CHECK(std::abs(ev[i] - 3.0) < 1e-12);
}

TEST_CASE("two-qubit heisenberg spectrum") {
  // oracle: direct diagonalization of XX + YY + ZZ
  const SpinSystem sys(2, Topology::chain, Coupling::heisenberg);
  Eigen::SelfAdjointEigenSolver<CMat> es(build_drift(sys), Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::sort(ev.begin(), ev.end());
  CHECK(std::abs(ev[0] + 3.0) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev[i] - 1.0) < 1e-12);
}

TEST_CASE("controls come out per qubit, x then y") {
  const SpinSystem five(5, Topology::chain, Coupling::ising);
  CHECK(build_controls(five).size() == 10);

  const SpinSystem two(2, Topology::chain, Coupling::ising);
  const auto ctrls = build_controls(two);
  REQUIRE(ctrls.size() == 4);
  CHECK(max_abs(ctrls[0] - pauli(Axis::x, 0, 2)) == 0.0);
  CHECK(max_abs(ctrls[1] - pauli(Axis::y, 0, 2)) == 0.0);
  CHECK(max_abs(ctrls[2] - pauli(Axis::x, 1, 2)) == 0.0);
  CHECK(max_abs(ctrls[3] - pauli(Axis::y, 1, 2)) == 0.0);
  for (const CMat& c : ctrls) {
    CHECK(is_hermitian(c));
    CHECK(std::abs(c.trace()) == 0.0);
  }
}

TEST_CASE("randomized strengths are deterministic and in range") {
  const SpinSystem base(5, Topology::fully_connected, Coupling::ising);
  const SpinSystem a = randomize_strengths(base, 77);
  const SpinSystem b = randomize_strengths(base, 77);
  CHECK(a.strengths == b.strengths);
  CHECK(a.strengths.size() == 10);
  for (double s : a.strengths) {
    CHECK(s >= 0.5);
    CHECK(s <= 1.5);
  }
  const SpinSystem c = randomize_strengths(base, 78);
  CHECK(a.strengths != c.strengths);
}

TEST_CASE("spin system validation") {
  CHECK_THROWS_AS(SpinSystem(1, Topology::chain, Coupling::ising),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpinSystem(3, Topology::chain, Coupling::ising,
                             std::vector<double>{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpinSystem(2, Topology::chain, Coupling::ising, 0.0),
                  std::invalid_argument);
}

TEST_CASE("ising drift commutes with the global z rotation") {
  for (Topology t : {Topology::chain, Topology::ring, Topology::star,
                     Topology::fully_connected}) {
    const SpinSystem sys(4, t, Coupling::ising);
    CMat total_z = CMat::Zero(16, 16);
    for (int q = 0; q < 4; ++q) total_z += pauli(Axis::z, q, 4);
    CHECK(max_abs(commutator(build_drift(sys), total_z)) < 1e-12);
  }
}

TEST_CASE("heisenberg drift commutes with total spin in every axis") {
  const SpinSystem sys(3, Topology::chain, Coupling::heisenberg);
  const CMat drift = build_drift(sys);
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    CMat total = CMat::Zero(8, 8);
    for (int q = 0; q < 3; ++q) total += pauli(a, q, 3);
    CHECK(max_abs(commutator(drift, total)) < 1e-12);
  }
}

TEST_CASE("drift plus controls generate su(4) at n = 2") {
  const SpinSystem sys(2, Topology::chain, Coupling::ising);
  std::vector<CMat> gens{build_drift(sys)};
  for (const CMat& c : build_controls(sys)) gens.push_back(c);
  CHECK(lie_algebra_rank(std::move(gens)) == 15);
}
