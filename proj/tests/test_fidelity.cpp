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

#include "insitu/fidelity.hpp"
#include "test_util.hpp"

using namespace insitu;

TEST_CASE("unitary gate fidelity basics") {
  Rng rng(1);
  const CMat u = random_unitary(4, rng);
  CHECK(gate_fidelity_unitary(u, u) == doctest::Approx(1.0).epsilon(1e-12));

  const CMat cnot = cnot_matrix(true);
  CHECK(gate_fidelity_unitary(CMat::Identity(4, 4), cnot) ==
        doctest::Approx(0.25).epsilon(1e-12));

  const cxd phase = std::exp(cxd(0, 0.7));
  CHECK(gate_fidelity_unitary(phase * u, u) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(gate_fidelity_unitary(CMat::Identity(2, 2), cnot),
                  std::invalid_argument);
  CHECK_THROWS_AS(gate_fidelity_unitary(2.0 * u, u), std::invalid_argument);
}

TEST_CASE("choi fidelity equals the trace formula") {
  Rng rng(2);
  for (int rep = 0; rep < 25; ++rep) {
    const CMat u = random_unitary(4, rng);
    const CMat v = random_unitary(4, rng);
    CHECK(std::abs(choi_fidelity(v, u) - gate_fidelity_unitary(v, u)) < 1e-10);
  }
  const CMat u2 = random_unitary(2, rng);
  CHECK(choi_fidelity(u2, u2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(choi_fidelity(CMat::Identity(2, 2), pauli(Axis::x, 0, 1)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("local fidelities of the exact target are all one") {
  const TargetGate target = cnot_target(3, 0, 1);
  const auto f = local_fidelities(target.full_unitary(), target);
  REQUIRE(f.size() == 2);
  for (double fi : f) CHECK(fi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(local_estimator(target.full_unitary(), target) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identity against cnot x identity gives [0.25, 1]") {
  const TargetGate target = cnot_target(3, 0, 1);
  const CMat v = CMat::Identity(8, 8);
  const auto f = local_fidelities(v, target);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(local_estimator(v, target) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("local fidelities match the operational-definition oracle") {
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const CMat v = random_unitary(8, rng);
    const TargetGate target = testutil::random_product_target(3, rng);
    const auto fast = local_fidelities(v, target);
    const auto oracle = testutil::local_fidelities_operational(v, target);
    REQUIRE(fast.size() == oracle.size());
    for (std::size_t i = 0; i < fast.size(); ++i)
      CHECK(std::abs(fast[i] - oracle[i]) < 1e-11);
  }
}

TEST_CASE("the local estimator lower-bounds the gate fidelity") {
  Rng rng(4);
  for (int n : {2, 3, 4}) {
    for (int rep = 0; rep < 60; ++rep) {
      const CMat v = random_unitary(1 << n, rng);
      const TargetGate target = testutil::random_product_target(n, rng);
      const double fle = local_estimator(v, target);
      const double f = choi_fidelity(v, target.full_unitary());
      CHECK(fle <= f + 1e-10);
      CHECK(fle >= 1.0 - static_cast<double>(target.partition.size()) - 1e-12);
    }
  }
}

TEST_CASE("the estimator floor 1 - k is attained") {
  // two singleton identity targets, evolution X x X: both local maps flip,
  // each local fidelity is 0, so the estimator hits 1 - 2
  const TargetGate target(SubsystemPartition(2, {{0}, {1}}),
                          {CMat::Identity(2, 2), CMat::Identity(2, 2)});
  const CMat v = pauli(Axis::x, 0, 2) * pauli(Axis::x, 1, 2);
  const auto f = local_fidelities(v, target);
  CHECK(f[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(local_estimator(v, target) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("bound tightens as the perturbation shrinks") {
  const TargetGate target = cnot_target(4, 0, 1);
  const CMat u_t = target.full_unitary();
  double prev_inf = 1.0, prev_gap_ratio = 0.0;
  for (double eps : {0.2, 0.1, 0.05}) {
    double inf_f = 0.0, inf_fle = 0.0;
    const int samples = 25;
    for (int s = 0; s < samples; ++s) {
      const CMat h = random_hamiltonian(4, eps, 500 + s);
      const CMat v = matrix_exponential(h, cxd(0, -1)) * u_t;
      inf_f += 1.0 - gate_fidelity_unitary(v, u_t);
      inf_fle += 1.0 - local_estimator(v, target);
    }
    inf_f /= samples;
    inf_fle /= samples;
    CHECK(inf_f < prev_inf);        // both infidelities shrink with eps
    CHECK(inf_fle >= inf_f - 1e-12);
    const double ratio = inf_fle / inf_f;
    CHECK(ratio < 10.0);            // gap stays a bounded multiple
    prev_inf = inf_f;
    prev_gap_ratio = ratio;
  }
  (void)prev_gap_ratio;
}

TEST_CASE("quantize rounds to the grid with ties to even") {
  CHECK(quantize(0.99871, 0.001) == doctest::Approx(0.999).epsilon(1e-12));
  CHECK(quantize(0.77, 0.0) == 0.77);
  CHECK(quantize(0.5, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  // dyadic ties: 0.125/0.25 = 0.5 -> multiple 0; 0.375/0.25 = 1.5 -> 2
  CHECK(quantize(0.125, 0.25) == 0.0);
  CHECK(quantize(0.375, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(quantize(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("quantize is idempotent") {
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const double f = rng.uniform(-1.0, 1.0);
    const double a = std::pow(10.0, rng.uniform(-6.0, -1.0));
    const double once = quantize(f, a);
    CHECK(quantize(once, a) == once);
  }
}

TEST_CASE("all fidelities are phase invariant") {
  Rng rng(6);
  const TargetGate target = testutil::random_product_target(3, rng);
  const CMat v = random_unitary(8, rng);
  const CMat w = std::exp(cxd(0, 1.234)) * v;
  CHECK(std::abs(local_estimator(v, target) - local_estimator(w, target)) <
        1e-12);
  CHECK(std::abs(choi_fidelity(v, target.full_unitary()) -
                 choi_fidelity(w, target.full_unitary())) < 1e-12);
}

TEST_CASE("measurement model invariants") {
  MeasurementModel m;
  CHECK_NOTHROW(m.validate());  // exact, a_num 0

  m.a_num = 0.01;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);  // exact wants a_num 0

  m.mode = MeasureMode::quantized;
  CHECK_NOTHROW(m.validate());
  m.a_num = 0.0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);

  m.mode = MeasureMode::sampled;
  m.a_num = 0.001;
  m.shots = 0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.shots = 100;
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("target gate validation and embedding") {
  CHECK_THROWS_AS(cnot_target(3, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(cnot_target(3, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(TargetGate(SubsystemPartition(2, {{0}, {1}}),
                             {CMat::Identity(2, 2), 2.0 * CMat::Identity(2, 2)}),
                  std::invalid_argument);

  // control below target vs above: flipping the pair swaps the roles
  const CMat a = cnot_target(2, 0, 1).full_unitary();
  const CMat b = cnot_target(2, 1, 0).full_unitary();
  CHECK((a - b).cwiseAbs().maxCoeff() > 0.5);
  // |10> -> |11> for control 0: column index 2 maps to row 3
  CHECK(a(3, 2) == cxd(1, 0));
  CHECK(b(3, 1) == cxd(1, 0));  // |01> -> |11> for control 1

  // non-contiguous group embeds at the right positions
  const TargetGate far = cnot_target(3, 0, 2);
  const CMat u = far.full_unitary();
  // |100> -> |101>: index 4 -> 5
  CHECK(u(5, 4) == cxd(1, 0));
  CHECK(u(0, 0) == cxd(1, 0));
}
