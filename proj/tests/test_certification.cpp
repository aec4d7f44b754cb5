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

#include <cmath>

#include "insitu/certification.hpp"

using namespace insitu;

namespace {

constexpr double kPi = 3.14159265358979323846;

PulseGrid test_pulse(const SpinSystem& sys, int n_ts, double t_gate,
                     std::uint64_t seed) {
  return random_initial_pulse(2 * sys.n, n_ts, t_gate, seed);
}

}  // namespace

TEST_CASE("exact target evolution certifies to one under both protocols") {
  const TargetGate target = cnot_target(2, 0, 1);
  const CMat v = target.full_unitary();
  for (CertifyProtocol proto :
       {CertifyProtocol::sequential, CertifyProtocol::parallel}) {
    const CertificationResult r = certify_unitary(v, target, proto, 2000, 7);
    REQUIRE(r.values.size() == 1);
    CHECK(std::abs(r.values[0] - 1.0) <= 4.0 * r.stderrs[0] + 1e-9);
  }
}

TEST_CASE("sequential estimates agree with the exact local fidelities") {
  const SpinSystem sys(2, Topology::chain, Coupling::ising);
  const TargetGate target = cnot_target(2, 0, 1);
  const PulseGrid pulse = test_pulse(sys, 6, kPi, 21);
  const auto exact = local_fidelities(evolve_total(compile(sys), pulse), target);

  const CertificationResult r = certify_sequential(sys, pulse, target, 100000, 5);
  REQUIRE(r.values.size() == exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(r.stderrs[i] > 0.0);
    CHECK(std::abs(r.values[i] - exact[i]) <= 4.0 * r.stderrs[i] + 1e-9);
  }
}

TEST_CASE("parallel estimates agree with the exact local fidelities") {
  const SpinSystem sys(2, Topology::chain, Coupling::ising);
  const TargetGate target = cnot_target(2, 0, 1);
  const PulseGrid pulse = test_pulse(sys, 6, kPi, 22);
  const auto exact = local_fidelities(evolve_total(compile(sys), pulse), target);

  const CertificationResult r = certify_parallel(sys, pulse, target, 100000, 6);
  REQUIRE(r.values.size() == exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i)
    CHECK(std::abs(r.values[i] - exact[i]) <= 4.0 * r.stderrs[i] + 1e-9);
}

TEST_CASE("the two protocols agree within their combined error bars") {
  const SpinSystem sys(3, Topology::chain, Coupling::ising);
  const TargetGate target = cnot_target(3, 0, 1);
  const PulseGrid pulse = test_pulse(sys, 6, kPi, 23);
  const CertificationResult a = certify_sequential(sys, pulse, target, 40000, 11);
  const CertificationResult b = certify_parallel(sys, pulse, target, 40000, 12);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double sigma = std::hypot(a.stderrs[i], b.stderrs[i]);
    CHECK(std::abs(a.values[i] - b.values[i]) <= 4.0 * sigma + 1e-9);
  }
}

TEST_CASE("empirical scatter shrinks like one over sqrt(shots)") {
  const SpinSystem sys(2, Topology::chain, Coupling::ising);
  const TargetGate target = cnot_target(2, 0, 1);
  const PulseGrid pulse = test_pulse(sys, 4, kPi, 29);
  const CMat v = evolve_total(compile(sys), pulse);

  auto scatter = [&](long shots) {
    const int repeats = 100;
    double sum = 0.0, sumsq = 0.0;
    for (int rep = 0; rep < repeats; ++rep) {
      const double est =
          certify_unitary(v, target, CertifyProtocol::parallel, shots,
                          1000 + rep)
              .values[0];
      sum += est;
      sumsq += est * est;
    }
    const double mean = sum / repeats;
    return std::sqrt((sumsq - repeats * mean * mean) / (repeats - 1.0));
  };

  const double s1 = scatter(10000);
  const double s2 = scatter(40000);
  const double ratio = s1 / s2;  // expect about 2
  CHECK(ratio > 2.0 / 1.5);
  CHECK(ratio < 2.0 * 1.5);
}

TEST_CASE("parallel settings count depends on the group sizes, not on n") {
  const SpinSystem sys4(4, Topology::chain, Coupling::ising);
  const SpinSystem sys6(6, Topology::chain, Coupling::ising);
  const CertificationResult r4 = certify_parallel(
      sys4, test_pulse(sys4, 2, 1.0, 31), cnot_target(4, 0, 1), 200, 1);
  const CertificationResult r6 = certify_parallel(
      sys6, test_pulse(sys6, 2, 1.0, 32), cnot_target(6, 0, 1), 200, 2);
  CHECK(r4.settings_count == r6.settings_count);
  CHECK(r4.settings_count > 0);

  const CertificationResult s4 = certify_sequential(
      sys4, test_pulse(sys4, 2, 1.0, 33), cnot_target(4, 0, 1), 200, 3);
  const CertificationResult s6 = certify_sequential(
      sys6, test_pulse(sys6, 2, 1.0, 34), cnot_target(6, 0, 1), 200, 4);
  // sequential probing grows with the number of subsystems
  CHECK(s6.settings_count > s4.settings_count);
}

TEST_CASE("certification is deterministic per seed") {
  const SpinSystem sys(2, Topology::chain, Coupling::ising);
  const TargetGate target = cnot_target(2, 0, 1);
  const PulseGrid pulse = test_pulse(sys, 4, kPi, 35);
  const CertificationResult a = certify_parallel(sys, pulse, target, 5000, 9);
  const CertificationResult b = certify_parallel(sys, pulse, target, 5000, 9);
  CHECK(a.values == b.values);
  const CertificationResult c = certify_parallel(sys, pulse, target, 5000, 10);
  CHECK(a.values != c.values);
}

TEST_CASE("measure_local_fidelities respects the measurement model") {
  const SpinSystem sys(2, Topology::chain, Coupling::ising);
  const TargetGate target = cnot_target(2, 0, 1);
  const LocalFidelityEvaluator eval(target);
  const PulseGrid pulse = test_pulse(sys, 4, kPi, 41);
  const CMat v = evolve_total(compile(sys), pulse);

  MeasurementModel exact;
  CHECK(measure_local_fidelities(v, target, eval, exact, 1) ==
        eval.local_fidelities(v));

  MeasurementModel quant;
  quant.mode = MeasureMode::quantized;
  quant.a_num = 0.05;
  const auto q = measure_local_fidelities(v, target, eval, quant, 1);
  const auto f = eval.local_fidelities(v);
  for (std::size_t i = 0; i < q.size(); ++i)
    CHECK(q[i] == quantize(f[i], 0.05));

  MeasurementModel sampled;
  sampled.mode = MeasureMode::sampled;
  sampled.a_num = 0.001;
  sampled.shots = 20000;
  const auto s = measure_local_fidelities(v, target, eval, sampled, 99);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(std::abs(s[i] - f[i]) < 0.05);
    CHECK(s[i] == quantize(s[i], 0.001));  // recorded at finite precision
  }

  CHECK_THROWS_AS(certify_unitary(v, target, CertifyProtocol::parallel, 0, 1),
                  std::invalid_argument);
}
