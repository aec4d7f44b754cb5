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

#include "insitu/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace insitu {

namespace {

void check_same_square(const CMat& v, const CMat& u, const char* who) {
  if (v.rows() != v.cols() || u.rows() != u.cols() || v.rows() != u.rows())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

double gate_fidelity_unitary(const CMat& v, const CMat& u) {
  check_same_square(v, u, "gate_fidelity_unitary");
  if (!is_unitary(v, 1e-8) || !is_unitary(u, 1e-8))
    throw std::invalid_argument("gate_fidelity_unitary: inputs must be unitary");
  const cxd t = (v.adjoint() * u).trace() / static_cast<double>(v.rows());
  return std::norm(t);
}

double choi_fidelity(const CMat& v, const CMat& u) {
  check_same_square(v, u, "choi_fidelity");
  const CVec cv = choi_state(v);
  const CVec cu = choi_state(u);
  return std::norm(cu.dot(cv));
}

LocalFidelityEvaluator::LocalFidelityEvaluator(const TargetGate& target)
    : n_(target.n), dim_(1 << target.n) {
  groups_.reserve(target.partition.size());
  for (std::size_t i = 0; i < target.partition.size(); ++i) {
    Group g;
    for (int q : target.partition.groups[i]) g.doubled_positions.push_back(q);
    for (int q : target.partition.groups[i])
      g.doubled_positions.push_back(n_ + q);
    g.choi_factor = choi_state(target.factors[i]);
    g.projector = g.choi_factor * g.choi_factor.adjoint();
    groups_.push_back(std::move(g));
  }
}

std::vector<double> LocalFidelityEvaluator::local_fidelities(const CMat& v) const {
  if (v.rows() != dim_ || v.cols() != dim_)
    throw std::invalid_argument("local_fidelities: unitary dimension does not match target");
  const CVec c = choi_state(v);
  std::vector<double> out;
  out.reserve(groups_.size());
  for (const Group& g : groups_) {
    const CMat rho = partial_trace_pure(c, g.doubled_positions, 2 * n_);
    const double f = std::real(g.choi_factor.dot(rho * g.choi_factor));
    out.push_back(f);
  }
  return out;
}

double LocalFidelityEvaluator::estimator_from_locals(const std::vector<double>& f) {
  double est = 1.0;
  for (double fi : f) est -= (1.0 - fi);
  return est;
}

double LocalFidelityEvaluator::local_estimator(const CMat& v) const {
  return estimator_from_locals(local_fidelities(v));
}

CMat LocalFidelityEvaluator::estimator_cogradient(const CMat& v) const {
  const CVec c = choi_state(v);
  CVec w = CVec::Zero(c.size());
  for (const Group& g : groups_)
    w += apply_local(c, g.projector, g.doubled_positions, 2 * n_);
  CMat lambda(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k)
      lambda(i, k) = w(static_cast<Eigen::Index>(i) * dim_ + k);
  return lambda;
}

std::vector<double> local_fidelities(const CMat& v, const TargetGate& target) {
  return LocalFidelityEvaluator(target).local_fidelities(v);
}

double local_estimator(const CMat& v, const TargetGate& target) {
  return LocalFidelityEvaluator(target).local_estimator(v);
}

double quantize(double f, double a_num) {
  if (a_num < 0.0) throw std::invalid_argument("quantize: negative accuracy");
  if (a_num == 0.0) return f;
  const double r = f / a_num;
  double lo = std::floor(r);
  const double frac = r - lo;
  double k;
  if (frac > 0.5) {
    k = lo + 1.0;
  } else if (frac < 0.5) {
    k = lo;
  } else {
    // exact tie: pick the even multiple
    k = (std::fmod(lo, 2.0) == 0.0) ? lo : lo + 1.0;
  }
  return k * a_num;
}

void MeasurementModel::validate() const {
  if (a_num < 0.0) throw std::invalid_argument("MeasurementModel: a_num must be >= 0");
  if (mode == MeasureMode::exact) {
    if (a_num != 0.0)
      throw std::invalid_argument("MeasurementModel: exact mode requires a_num = 0");
  } else {
    if (a_num == 0.0)
      throw std::invalid_argument("MeasurementModel: a_num must be nonzero outside exact mode");
  }
  if (mode == MeasureMode::sampled && shots < 1)
    throw std::invalid_argument("MeasurementModel: sampled mode requires shots >= 1");
}

}  // namespace insitu
