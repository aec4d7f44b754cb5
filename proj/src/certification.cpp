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

#include "insitu/certification.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace insitu {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Eigenstates of the single-qubit Paulis (axis 0 = identity, whose
// "eigenstates" are the computational basis with both signs +1).
Eigen::Vector2cd axis_state(int axis, int which) {
  switch (axis) {
    case 0:
    case 3:
      return which == 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
    case 1:
      return which == 0 ? Eigen::Vector2cd(kInvSqrt2, kInvSqrt2)
                        : Eigen::Vector2cd(kInvSqrt2, -kInvSqrt2);
    default:
      return which == 0 ? Eigen::Vector2cd(kInvSqrt2, cxd(0, kInvSqrt2))
                        : Eigen::Vector2cd(kInvSqrt2, cxd(0, -kInvSqrt2));
  }
}

double axis_sign(int axis, int which) {
  if (axis == 0) return 1.0;
  return which == 0 ? 1.0 : -1.0;
}

// Rotation into the measurement basis of one Pauli axis: columns are the
// eigenstates, so B^dag maps them onto the computational basis.
Eigen::Matrix2cd axis_basis(int axis) {
  Eigen::Matrix2cd b;
  b.col(0) = axis_state(axis, 0);
  b.col(1) = axis_state(axis, 1);
  return b;
}

Eigen::Matrix2cd single_pauli(int axis) {
  Eigen::Matrix2cd p;
  switch (axis) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, cxd(0, -1), cxd(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

std::vector<int> string_axes(int k, int nq) {
  std::vector<int> axes(nq);
  for (int j = nq - 1; j >= 0; --j) {
    axes[j] = k & 3;
    k >>= 2;
  }
  return axes;
}

CMat pauli_string(const std::vector<int>& axes) {
  CMat p = CMat::Identity(1, 1);
  for (int a : axes) p = kron(p, single_pauli(a));
  return p;
}

struct GroupData {
  int nq = 0;
  int d = 0;
  int n_strings = 0;              // d^2 Pauli strings
  std::vector<int> positions;     // system qubit positions
  std::vector<std::vector<int>> axes;       // per string
  Eigen::MatrixXd alpha;                    // alpha[k][m]
  // per string k: (m, |alpha| cumulative weight, total) for importance draws
  std::vector<std::vector<std::pair<int, double>>> m_cumulative;
  std::vector<double> m_total;
  long quantum_settings = 0;      // (k, s, m) combinations with m != identity

  CVec prep_state(int k, int s) const {
    CVec v = CVec::Ones(1);
    for (int j = 0; j < nq; ++j) {
      const int which = (s >> (nq - 1 - j)) & 1;
      const Eigen::Vector2cd q = axis_state(axes[k][j], which);
      CVec next(v.size() * 2);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        next(2 * i) = v(i) * q(0);
        next(2 * i + 1) = v(i) * q(1);
      }
      v.swap(next);
    }
    return v;
  }

  double prep_sign(int k, int s) const {
    double sign = 1.0;
    for (int j = 0; j < nq; ++j)
      sign *= axis_sign(axes[k][j], (s >> (nq - 1 - j)) & 1);
    return sign;
  }

  double outcome_value(int m, int bits) const {
    double o = 1.0;
    for (int j = 0; j < nq; ++j)
      if (axes[m][j] != 0 && ((bits >> (nq - 1 - j)) & 1)) o = -o;
    return o;
  }
};

GroupData build_group(const TargetGate& target, std::size_t gi) {
  GroupData g;
  g.positions = target.partition.groups[gi];
  g.nq = static_cast<int>(g.positions.size());
  g.d = 1 << g.nq;
  g.n_strings = g.d * g.d;
  const CMat& u = target.factors[gi];

  std::vector<CMat> strings(g.n_strings);
  g.axes.resize(g.n_strings);
  for (int k = 0; k < g.n_strings; ++k) {
    g.axes[k] = string_axes(k, g.nq);
    strings[k] = pauli_string(g.axes[k]);
  }

  g.alpha = Eigen::MatrixXd::Zero(g.n_strings, g.n_strings);
  g.m_cumulative.resize(g.n_strings);
  g.m_total.assign(g.n_strings, 0.0);
  for (int k = 0; k < g.n_strings; ++k) {
    const CMat conjugated = u * strings[k] * u.adjoint();
    double cum = 0.0;
    for (int m = 0; m < g.n_strings; ++m) {
      double a = std::real((strings[m] * conjugated).trace()) / g.d;
      if (std::abs(a) < 1e-12) a = 0.0;
      g.alpha(k, m) = a;
      if (a != 0.0) {
        cum += std::abs(a);
        g.m_cumulative[k].emplace_back(m, cum);
        if (m != 0) g.quantum_settings += g.d;  // one per eigenstate s
      }
    }
    g.m_total[k] = cum;
  }
  return g;
}

// Index bookkeeping for embedding the group into the full register.
struct RegisterMap {
  IndexSplit split;
  std::int64_t dim;
  RegisterMap(const std::vector<int>& positions, int n)
      : split(positions, n), dim(std::int64_t{1} << n) {}
};

void build_input(CVec& state, const RegisterMap& map, const CVec& group_state,
                 std::uint64_t env_index) {
  state.setZero();
  const std::uint64_t e = map.split.env[env_index];
  for (Eigen::Index b = 0; b < group_state.size(); ++b)
    state(map.split.kept[b] + e) = group_state(b);
}

// Rotate the non-identity digits of measurement string m into the
// computational basis.
void rotate_for_measurement(CVec& state, const GroupData& g, int m, int n) {
  for (int j = 0; j < g.nq; ++j) {
    const int axis = g.axes[m][j];
    if (axis == 0 || axis == 3) continue;  // Z and identity need no rotation
    const Eigen::Matrix2cd bdag = axis_basis(axis).adjoint();
    state = apply_local(state, bdag, {g.positions[j]}, n);
  }
}

int sample_group_bits(const CVec& state, const RegisterMap& map, Rng& rng) {
  const std::size_t kd = map.split.kept.size();
  std::vector<double> prob(kd, 0.0);
  for (std::uint64_t e : map.split.env)
    for (std::size_t b = 0; b < kd; ++b)
      prob[b] += std::norm(state(map.split.kept[b] + e));
  double r = rng.uniform01();
  for (std::size_t b = 0; b < kd; ++b) {
    if (r < prob[b]) return static_cast<int>(b);
    r -= prob[b];
  }
  return static_cast<int>(kd - 1);
}

// Full-register computational-basis sample.
std::int64_t sample_full(const CVec& state, Rng& rng) {
  double r = rng.uniform01();
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    const double p = std::norm(state(i));
    if (r < p) return i;
    r -= p;
  }
  return state.size() - 1;
}

int group_bits_of(std::int64_t full_index, const std::vector<int>& positions,
                  int n) {
  int bits = 0;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    bits <<= 1;
    bits |= static_cast<int>((full_index >> (n - 1 - positions[j])) & 1);
  }
  return bits;
}

CertificationResult certify_sequential_impl(const CMat& v,
                                            const TargetGate& target,
                                            long shots, std::uint64_t seed) {
  const int n = target.n;
  CertificationResult result;
  Rng rng(seed);

  for (std::size_t gi = 0; gi < target.partition.size(); ++gi) {
    const GroupData g = build_group(target, gi);
    const RegisterMap map(g.positions, n);
    const double inv_d3 = 1.0 / (static_cast<double>(g.d) * g.d * g.d);
    const long n_rep =
        std::max<long>(1, shots / std::max<long>(1, g.quantum_settings));

    double est = 0.0;
    double var = 0.0;
    long runs = 0;
    CVec input(map.dim), out(map.dim);
    for (int k = 0; k < g.n_strings; ++k) {
      for (int s = 0; s < g.d; ++s) {
        const double sign = g.prep_sign(k, s);
        const CVec prep = g.prep_state(k, s);
        for (const auto& [m, cum] : g.m_cumulative[k]) {
          const double w = inv_d3 * sign * g.alpha(k, m);
          if (m == 0) {
            est += w;  // identity measurement: outcome is 1 with certainty
            continue;
          }
          long plus = 0;
          for (long rep = 0; rep < n_rep; ++rep) {
            build_input(input, map,  prep,
                        rng.uniform_int(map.split.env.size()));
            out.noalias() = v * input;
            rotate_for_measurement(out, g, m, n);
            const int bits = sample_group_bits(out, map, rng);
            if (g.outcome_value(m, bits) > 0) ++plus;
          }
          runs += n_rep;
          const double mean =
              2.0 * static_cast<double>(plus) / n_rep - 1.0;
          // Agresti-Coull smoothed variance, never exactly zero unless the
          // setting is deterministic in the infinite-shot limit too.
          const double pt = (static_cast<double>(plus) + 1.0) / (n_rep + 2.0);
          const double var_mean = 4.0 * pt * (1.0 - pt) / n_rep;
          est += w * mean;
          var += w * w * var_mean;
        }
      }
    }
    result.values.push_back(est);
    result.stderrs.push_back(std::sqrt(var));
    result.settings_count += g.quantum_settings;
    result.total_runs += runs;
  }
  return result;
}

CertificationResult certify_parallel_impl(const CMat& v,
                                          const TargetGate& target, long shots,
                                          std::uint64_t seed) {
  const int n = target.n;
  const std::int64_t dim = std::int64_t{1} << n;
  Rng rng(seed);

  const std::size_t ng = target.partition.size();
  std::vector<GroupData> groups;
  groups.reserve(ng);
  long max_settings = 0;
  for (std::size_t gi = 0; gi < ng; ++gi) {
    groups.push_back(build_group(target, gi));
    max_settings = std::max(max_settings, groups.back().quantum_settings);
  }

  std::vector<double> sum(ng, 0.0), sumsq(ng, 0.0);
  std::vector<int> ks(ng), ss(ng), ms(ng);
  std::vector<double> weight(ng);
  std::vector<CVec> preps(ng);

  CVec input(dim), out(dim);
  for (long run = 0; run < shots; ++run) {
    // every group draws its own preparation and measurement setting
    for (std::size_t j = 0; j < ng; ++j) {
      const GroupData& g = groups[j];
      ks[j] = static_cast<int>(rng.uniform_int(g.n_strings));
      ss[j] = static_cast<int>(rng.uniform_int(g.d));
      const auto& cdf = g.m_cumulative[ks[j]];
      const double r = rng.uniform01() * g.m_total[ks[j]];
      int m = cdf.back().first;
      double lo = 0.0;
      for (const auto& [cand, cum] : cdf) {
        if (r < cum) {
          m = cand;
          break;
        }
        lo = cum;
      }
      (void)lo;
      ms[j] = m;
      const double q = std::abs(g.alpha(ks[j], m)) / g.m_total[ks[j]];
      weight[j] = g.prep_sign(ks[j], ss[j]) * g.alpha(ks[j], m) / q;
      preps[j] = g.prep_state(ks[j], ss[j]);
    }

    // product input state over all groups
    for (std::int64_t idx = 0; idx < dim; ++idx) {
      cxd amp = 1.0;
      for (std::size_t j = 0; j < ng; ++j) {
        const int bits = group_bits_of(idx, groups[j].positions, n);
        amp *= preps[j](bits);
        if (amp == cxd(0.0)) break;
      }
      input(idx) = amp;
    }

    out.noalias() = v * input;
    for (std::size_t j = 0; j < ng; ++j)
      if (ms[j] != 0) rotate_for_measurement(out, groups[j], ms[j], n);

    const std::int64_t z = sample_full(out, rng);
    for (std::size_t j = 0; j < ng; ++j) {
      double o = 1.0;
      if (ms[j] != 0)
        o = groups[j].outcome_value(ms[j],
                                    group_bits_of(z, groups[j].positions, n));
      const double x = weight[j] * o;
      sum[j] += x;
      sumsq[j] += x * x;
    }
  }

  CertificationResult result;
  for (std::size_t j = 0; j < ng; ++j) {
    const double mean = sum[j] / shots;
    double var = 0.0;
    if (shots > 1)
      var = std::max(0.0, (sumsq[j] - shots * mean * mean) / (shots - 1.0));
    result.values.push_back(mean);
    result.stderrs.push_back(std::sqrt(var / shots));
  }
  result.settings_count = max_settings;
  result.total_runs = shots;
  return result;
}

}  // namespace

CertificationResult certify_unitary(const CMat& v, const TargetGate& target,
                                    CertifyProtocol protocol, long shots,
                                    std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("certify: shots must be >= 1");
  if (v.rows() != (std::int64_t{1} << target.n))
    throw std::invalid_argument("certify: unitary dimension does not match target");
  return protocol == CertifyProtocol::sequential
             ? certify_sequential_impl(v, target, shots, seed)
             : certify_parallel_impl(v, target, shots, seed);
}

CertificationResult certify_sequential(const SpinSystem& sys,
                                       const PulseGrid& pulse,
                                       const TargetGate& target, long shots,
                                       std::uint64_t seed) {
  return certify_unitary(evolve_total(compile(sys), pulse), target,
                         CertifyProtocol::sequential, shots, seed);
}

CertificationResult certify_parallel(const SpinSystem& sys,
                                     const PulseGrid& pulse,
                                     const TargetGate& target, long shots,
                                     std::uint64_t seed) {
  return certify_unitary(evolve_total(compile(sys), pulse), target,
                         CertifyProtocol::parallel, shots, seed);
}

std::vector<double> measure_local_fidelities(const CMat& v,
                                             const TargetGate& target,
                                             const LocalFidelityEvaluator& eval,
                                             const MeasurementModel& model,
                                             std::uint64_t call_seed) {
  model.validate();
  std::vector<double> f;
  switch (model.mode) {
    case MeasureMode::exact:
      return eval.local_fidelities(v);
    case MeasureMode::quantized:
      f = eval.local_fidelities(v);
      break;
    case MeasureMode::sampled:
      f = certify_unitary(v, target, model.protocol, model.shots, call_seed)
              .values;
      break;
  }
  for (double& fi : f) fi = quantize(fi, model.a_num);
  return f;
}

}  // namespace insitu
