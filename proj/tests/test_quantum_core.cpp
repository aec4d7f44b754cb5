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

#include "insitu/operator.hpp"
#include "insitu/target.hpp"

using namespace insitu;

namespace {

double max_abs(const CMat& a) { return a.cwiseAbs().maxCoeff(); }

CMat sigma(Axis a) { return pauli(a, 0, 1); }

}  // namespace

TEST_CASE("pauli matrices match their defining examples") {
  const CMat z = pauli(Axis::z, 0, 1);
  CHECK(z(0, 0) == cxd(1, 0));
  CHECK(z(1, 1) == cxd(-1, 0));
  CHECK(z(0, 1) == cxd(0, 0));

  const CMat x1 = pauli(Axis::x, 1, 2);
  CHECK(max_abs(x1 - kron(CMat::Identity(2, 2), sigma(Axis::x))) == 0.0);
  CHECK(std::abs(x1.trace()) == 0.0);
  CHECK(max_abs(x1 * x1 - CMat::Identity(4, 4)) == 0.0);

  const CMat y0 = pauli(Axis::y, 0, 3);
  CHECK(is_hermitian(y0));
  Eigen::SelfAdjointEigenSolver<CMat> es(y0);
  int plus = 0, minus = 0;
  for (int i = 0; i < 8; ++i) {
    if (std::abs(es.eigenvalues()(i) - 1.0) < 1e-12) ++plus;
    if (std::abs(es.eigenvalues()(i) + 1.0) < 1e-12) ++minus;
  }
  CHECK(plus == 4);
  CHECK(minus == 4);
}

TEST_CASE("pauli rejects out-of-range qubits") {
  CHECK_THROWS_AS(pauli(Axis::x, 2, 2), std::out_of_range);
  CHECK_THROWS_AS(pauli(Axis::x, -1, 2), std::out_of_range);
}

TEST_CASE("pauli operators are hermitian, traceless and involutory") {
  for (Axis a : {Axis::x, Axis::y, Axis::z})
    for (int q = 0; q < 3; ++q) {
      const CMat p = pauli(a, q, 3);
      CHECK(is_hermitian(p));
      CHECK(std::abs(p.trace()) < 1e-14);
      CHECK(max_abs(p * p - CMat::Identity(8, 8)) < 1e-14);
    }
}

TEST_CASE("kron basics and mixed-product identity") {
  CHECK(max_abs(kron(CMat::Identity(2, 2), CMat::Identity(2, 2)) -
                CMat::Identity(4, 4)) == 0.0);

  const CMat zz = kron(sigma(Axis::z), sigma(Axis::z));
  CHECK(zz(0, 0) == cxd(1, 0));
  CHECK(zz(1, 1) == cxd(-1, 0));
  CHECK(zz(2, 2) == cxd(-1, 0));
  CHECK(zz(3, 3) == cxd(1, 0));

  Rng rng(11);
  auto rand2 = [&rng] {
    CMat m(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = cxd(rng.normal(), rng.normal());
    return m;
  };
  for (int rep = 0; rep < 10; ++rep) {
    const CMat a = rand2(), b = rand2(), c = rand2(), d = rand2();
    CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    CHECK(max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("matrix exponential on hermitian input") {
  const CMat zz = kron(sigma(Axis::z), sigma(Axis::z));
  const double pi = 3.14159265358979323846;
  CHECK(max_abs(matrix_exponential(zz, cxd(0, -pi)) + CMat::Identity(4, 4)) <
        1e-12);

  const CMat h = random_hamiltonian(2, 1.0, 5);
  CHECK(max_abs(matrix_exponential(h, cxd(0, 0)) - CMat::Identity(4, 4)) <
        1e-14);

  const double theta = pi / 3;
  const CMat expected = std::cos(theta) * CMat::Identity(2, 2) -
                        cxd(0, 1) * std::sin(theta) * sigma(Axis::x);
  CHECK(max_abs(matrix_exponential(sigma(Axis::x), cxd(0, -theta)) - expected) <
        1e-14);
}

TEST_CASE("matrix exponential is unitary for anti-hermitian exponents") {
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + static_cast<int>(rng.uniform_int(3));
    const CMat h = random_hamiltonian(n, 1.0, rng.next_u64());
    const double t = rng.uniform(0.0, 10.0);
    const CMat u = matrix_exponential(h, cxd(0, -t));
    CHECK(is_unitary(u, 1e-10));
  }
}

TEST_CASE("matrix exponential pade fallback and error paths") {
  CMat nil = CMat::Zero(2, 2);
  nil(0, 1) = 1.0;  // nilpotent: exp = I + N
  const CMat e = matrix_exponential(nil, cxd(1, 0));
  CHECK(max_abs(e - (CMat::Identity(2, 2) + nil)) < 1e-14);

  CMat bad = CMat::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(matrix_exponential(bad, cxd(1, 0)), std::invalid_argument);
}

TEST_CASE("partial trace factorizes product states") {
  Rng rng(7);
  auto rand_psd = [&rng](int d) {
    CMat m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = cxd(rng.normal(), rng.normal());
    return CMat(m * m.adjoint());
  };
  const CMat a = rand_psd(2), b = rand_psd(2);
  const CMat reduced = partial_trace(kron(a, b), {0}, 2);
  CHECK(max_abs(reduced - a * b.trace()) < 1e-10);
}

TEST_CASE("partial trace of a bell state is maximally mixed") {
  CVec bell(4);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  const CMat rho = bell * bell.adjoint();
  for (int keep = 0; keep < 2; ++keep) {
    const CMat r = partial_trace(rho, {keep}, 2);
    CHECK(max_abs(r - 0.5 * CMat::Identity(2, 2)) < 1e-14);
    const CMat rp = partial_trace_pure(bell, {keep}, 2);
    CHECK(max_abs(rp - 0.5 * CMat::Identity(2, 2)) < 1e-14);
  }
}

TEST_CASE("partial trace keeps everything when nothing is traced out") {
  const CMat h = random_hamiltonian(2, 1.0, 9);
  CHECK(max_abs(partial_trace(h, {0, 1}, 2) - h) == 0.0);
}

TEST_CASE("partial trace preserves trace and positivity") {
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    CMat m(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) = cxd(rng.normal(), rng.normal());
    CMat rho = m * m.adjoint();
    rho /= rho.trace();
    const CMat r = partial_trace(rho, {1}, 3);
    CHECK(std::abs(r.trace() - rho.trace()) < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMat> es(r, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }
}

TEST_CASE("partial trace rejects invalid keep sets") {
  const CMat rho = CMat::Identity(4, 4);
  CHECK_THROWS_AS(partial_trace(rho, {2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {0, 0}, 2), std::invalid_argument);
}

TEST_CASE("partial trace of pure state matches the density-matrix route") {
  Rng rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    CVec psi(8);
    for (int i = 0; i < 8; ++i) psi(i) = cxd(rng.normal(), rng.normal());
    psi.normalize();
    const CMat rho = psi * psi.adjoint();
    for (const std::vector<int>& keep :
         {std::vector<int>{0}, std::vector<int>{1, 2}, std::vector<int>{0, 2}})
      CHECK(max_abs(partial_trace_pure(psi, keep, 3) -
                    partial_trace(rho, keep, 3)) < 1e-12);
  }
}

TEST_CASE("choi state of the identity is the bell state") {
  const CVec c = choi_state(CMat::Identity(2, 2));
  CHECK(std::abs(c(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(c(1)) == 0.0);
  CHECK(std::abs(c(2)) == 0.0);
  CHECK(std::abs(c(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("choi state is normalized and rejects non-unitary input") {
  Rng rng(19);
  const CMat u = random_unitary(4, rng);
  CHECK(std::abs(choi_state(u).norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(choi_state(2.0 * CMat::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("choi overlap equals the trace-overlap formula") {
  // brute-force route: inner product of explicitly constructed Choi vectors
  Rng rng(29);
  for (int d : {2, 4, 8}) {
    for (int rep = 0; rep < 20; ++rep) {
      const CMat u = random_unitary(d, rng);
      const CMat v = random_unitary(d, rng);
      const double overlap = std::norm(choi_state(u).dot(choi_state(v)));
      const double trace_formula = std::norm((u.adjoint() * v).trace() / double(d));
      CHECK(std::abs(overlap - trace_formula) < 1e-10);
    }
  }
}

TEST_CASE("random hamiltonian has the requested spectral norm") {
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    const CMat h = random_hamiltonian(3, 0.1, seed);
    CHECK(is_hermitian(h));
    CHECK(std::abs(spectral_norm(h) - 0.1) < 1e-12);
  }
  CHECK(max_abs(random_hamiltonian(3, 0.1, 42) - random_hamiltonian(3, 0.1, 42)) ==
        0.0);
  CHECK(max_abs(random_hamiltonian(3, 0.1, 42) - random_hamiltonian(3, 0.1, 43)) >
        1e-3);
}

TEST_CASE("perturbing a gate by a norm-0.1 hamiltonian keeps fidelity near 0.995") {
  const TargetGate target = cnot_target(3, 0, 1);
  const CMat u_t = target.full_unitary();
  double mean = 0.0;
  const int samples = 200;
  for (int s = 0; s < samples; ++s) {
    const CMat h = random_hamiltonian(3, 0.1, 1000 + s);
    const CMat u = matrix_exponential(h, cxd(0, -1)) * u_t;
    mean += std::norm((u.adjoint() * u_t).trace() / 8.0);
  }
  mean /= samples;
  CHECK(mean > 0.990);
  CHECK(mean < 0.999);
}

TEST_CASE("apply_local agrees with dense embedding") {
  Rng rng(31);
  const CMat op = random_unitary(4, rng);
  const std::vector<int> pos{0, 2};
  CVec psi(8);
  for (int i = 0; i < 8; ++i) psi(i) = cxd(rng.normal(), rng.normal());
  const CVec via_local = apply_local(psi, op, pos, 3);
  const CVec via_embed = embed(op, pos, 3) * psi;
  CHECK((via_local - via_embed).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("subsystem partition validation") {
  CHECK_NOTHROW(SubsystemPartition(3, {{0, 1}, {2}}));
  CHECK_THROWS_AS(SubsystemPartition(3, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(SubsystemPartition(3, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SubsystemPartition(3, {{0, 1}, {2}, {}}), std::invalid_argument);
  const SubsystemPartition s = SubsystemPartition::singletons(4);
  CHECK(s.size() == 4);
  CHECK(s.group_dim(0) == 2);
}
