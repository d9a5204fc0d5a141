// Copyright 2026 The fluxsweet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fluxsweet/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "fluxsweet/errors.hpp"

namespace fluxsweet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kNodes = 6;

using cplx = std::complex<double>;

struct NodeRule {
  std::array<double, kNodes> s{};  // nodes on [0, 1]
  std::array<double, kNodes> w{};  // weights on [0, 1]
  // partial[i][j] = int_0^{s_i} L_j, L_j the Lagrange basis on the nodes.
  std::array<std::array<double, kNodes>, kNodes> partial{};
};

const NodeRule& node_rule() {
  static const NodeRule rule = [] {
    NodeRule r;
    const std::array<double, 3> x{0.2386191860831969086, 0.6612093864662645137,
                                  0.9324695142031520278};
    const std::array<double, 3> w{0.4679139345726910473, 0.3607615730481386076,
                                  0.1713244923791703450};
    for (int i = 0; i < 3; ++i) {
      r.s[2 - i] = 0.5 * (1.0 - x[i]);
      r.s[3 + i] = 0.5 * (1.0 + x[i]);
      r.w[2 - i] = r.w[3 + i] = 0.5 * w[i];
    }
    Eigen::Matrix<double, kNodes, kNodes> vander;
    for (int i = 0; i < kNodes; ++i) {
      for (int k = 0; k < kNodes; ++k) vander(i, k) = std::pow(r.s[i], k);
    }
    // Column j of the inverse holds the monomial coefficients of L_j.
    const Eigen::Matrix<double, kNodes, kNodes> coeff = vander.inverse();
    for (int i = 0; i < kNodes; ++i) {
      for (int j = 0; j < kNodes; ++j) {
        double acc = 0.0;
        for (int k = 0; k < kNodes; ++k) acc += coeff(k, j) * std::pow(r.s[i], k + 1) / (k + 1);
        r.partial[i][j] = acc;
      }
    }
    return r;
  }();
  return rule;
}

struct BlockWork {
  std::vector<int> index;
  std::vector<int> terms;          // coupling indices inside the block
  std::vector<int> local_a, local_b;
};

}  // namespace

QuantumSystem::QuantumSystem(std::vector<Level> levels, std::vector<CouplingTerm> couplings)
    : levels_(std::move(levels)), couplings_(std::move(couplings)) {
  const int n = dim();
  if (n == 0) throw InvalidArgument("QuantumSystem: empty basis");
  for (const auto& l : levels_) {
    if (l.tunable < 0 || l.tunable > 2) throw InvalidArgument("QuantumSystem: level outside 0..2");
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : couplings_) {
    if (c.a < 0 || c.a >= n || c.b < 0 || c.b >= n || c.a == c.b) {
      throw InvalidArgument("QuantumSystem: coupling indices out of range");
    }
    parent[find(c.a)] = find(c.b);
  }
  std::vector<int> root_to_block(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_to_block[r] < 0) {
      root_to_block[r] = static_cast<int>(blocks_.size());
      blocks_.emplace_back();
    }
    blocks_[root_to_block[r]].push_back(i);
  }
}

Eigen::MatrixXcd propagate(const BandSpectrum& band, const QuantumSystem& system,
                           const Drive& drive, double duration, const PropagatorOptions& options,
                           const StepObserver& observer) {
  drive.pulse.validate();
  if (!(duration >= 0.0)) throw InvalidArgument("propagate: duration must be >= 0");
  if (!(options.substep > 0.0)) throw InvalidArgument("propagate: substep must be > 0");
  const double h_nominal = options.substep;
  if (drive.noise) {
    const double ratio = drive.noise_dt / h_nominal;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 || ratio < 1.0) {
      throw InvalidArgument("propagate: substep must divide the noise step");
    }
    const auto needed = static_cast<std::size_t>(std::ceil(duration / drive.noise_dt - 1e-9));
    if (drive.noise->size() < needed) {
      throw IndexOutOfRange("propagate: noise trajectory shorter than the duration");
    }
  }

  const NodeRule& rule = node_rule();
  const int n = system.dim();
  const auto& levels = system.levels();
  const auto& couplings = system.couplings();
  const PulseParams& pulse = drive.pulse;

  const double fbar01 = time_average_frequency(band, pulse, Transition::k01);
  const double fbar12 = time_average_frequency(band, pulse, Transition::k12);
  std::vector<double> mean_energy(n);
  for (int i = 0; i < n; ++i) {
    const int q = levels[i].tunable;
    mean_energy[i] = levels[i].static_energy + (q >= 1 ? fbar01 : 0.0) + (q == 2 ? fbar12 : 0.0);
  }

  std::vector<BlockWork> blocks;
  for (const auto& idx : system.blocks()) {
    if (idx.size() < 2) continue;
    BlockWork b;
    b.index = idx;
    for (int c = 0; c < static_cast<int>(couplings.size()); ++c) {
      const auto it = std::find(idx.begin(), idx.end(), couplings[c].a);
      if (it == idx.end()) continue;
      b.terms.push_back(c);
      b.local_a.push_back(static_cast<int>(it - idx.begin()));
      b.local_b.push_back(static_cast<int>(
          std::find(idx.begin(), idx.end(), couplings[c].b) - idx.begin()));
    }
    blocks.push_back(std::move(b));
  }

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  double dev01 = 0.0;
  double dev12 = 0.0;
  auto frame_phase = [&](int i, double d01, double d12) {
    const int q = levels[i].tunable;
    return (q >= 1 ? d01 : 0.0) + (q == 2 ? d12 : 0.0);
  };
  auto emit = [&](double t) {
    if (!observer) return;
    Eigen::MatrixXcd framed = u;
    for (int i = 0; i < n; ++i) {
      framed.row(i) *= std::polar(1.0, -kTwoPi * frame_phase(i, dev01, dev12));
    }
    observer(t, framed);
  };

  const auto n_sub = static_cast<long long>(std::ceil(duration / h_nominal - 1e-9));
  std::array<double, kNodes> g01{}, g12{}, mu01{}, mu12{}, d01{}, d12{}, tn{};
  std::vector<cplx> coupling_at(couplings.size() * kNodes);

  for (long long step = 0; step < n_sub; ++step) {
    const double t0 = static_cast<double>(step) * h_nominal;
    const double h = std::min(h_nominal, duration - t0);
    double dc = pulse.phi_dc;
    double ac = pulse.phi_ac;
    if (drive.noise) {
      const auto k = static_cast<std::size_t>(std::floor((t0 + 0.5 * h) / drive.noise_dt));
      dc += drive.noise->dc[k];
      ac += drive.noise->ac[k];
    }
    for (int j = 0; j < kNodes; ++j) {
      tn[j] = t0 + rule.s[j] * h;
      const double phi = kTwoPi * (dc + ac * drive_shape(pulse, tn[j]));
      const auto [f01, f12] = band.frequencies(phi);
      const CouplingFactors mu = band.coupling_factors(phi);
      g01[j] = f01 - fbar01;
      g12[j] = f12 - fbar12;
      mu01[j] = mu.mu01;
      mu12[j] = mu.mu12;
    }
    for (int i = 0; i < kNodes; ++i) {
      double a = 0.0, b = 0.0;
      for (int j = 0; j < kNodes; ++j) {
        a += rule.partial[i][j] * g01[j];
        b += rule.partial[i][j] * g12[j];
      }
      d01[i] = dev01 + h * a;
      d12[i] = dev12 + h * b;
    }

    for (std::size_t c = 0; c < couplings.size(); ++c) {
      const CouplingTerm& term = couplings[c];
      const double de = mean_energy[term.a] - mean_energy[term.b];
      for (int j = 0; j < kNodes; ++j) {
        const double phase =
            de * tn[j] + frame_phase(term.a, d01[j], d12[j]) - frame_phase(term.b, d01[j], d12[j]);
        const double mu = term.dressing == Transition::k01 ? mu01[j] : mu12[j];
        coupling_at[c * kNodes + j] = term.strength * mu * std::polar(1.0, kTwoPi * phase);
      }
    }

    for (const BlockWork& b : blocks) {
      const int s = static_cast<int>(b.index.size());
      // Moments of the Hermitian generator; A = -i 2 pi H.
      Eigen::MatrixXcd m0 = Eigen::MatrixXcd::Zero(s, s);
      Eigen::MatrixXcd m1 = Eigen::MatrixXcd::Zero(s, s);
      for (std::size_t t = 0; t < b.terms.size(); ++t) {
        cplx z0 = 0.0, z1 = 0.0;
        for (int j = 0; j < kNodes; ++j) {
          const cplx v = coupling_at[b.terms[t] * kNodes + j];
          z0 += rule.w[j] * v;
          z1 += rule.w[j] * (rule.s[j] - 0.5) * v;
        }
        m0(b.local_a[t], b.local_b[t]) += h * z0;
        m0(b.local_b[t], b.local_a[t]) += h * std::conj(z0);
        m1(b.local_a[t], b.local_b[t]) += h * z1;
        m1(b.local_b[t], b.local_a[t]) += h * std::conj(z1);
      }
      // Omega = B0 - [B0, B1] with B = -i 2 pi M; write Omega = -i K, K Hermitian.
      const cplx mi(0.0, -kTwoPi);
      const Eigen::MatrixXcd b0 = mi * m0;
      const Eigen::MatrixXcd b1 = mi * m1;
      Eigen::MatrixXcd k_mat = cplx(0.0, 1.0) * (b0 - (b0 * b1 - b1 * b0));
      k_mat = 0.5 * (k_mat + k_mat.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(k_mat);
      const Eigen::VectorXcd phases =
          (-cplx(0.0, 1.0) * eig.eigenvalues().cast<cplx>()).array().exp();
      const Eigen::MatrixXcd e =
          eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();

      Eigen::MatrixXcd rows(s, n);
      for (int r = 0; r < s; ++r) rows.row(r) = u.row(b.index[r]);
      const Eigen::MatrixXcd updated = e * rows;
      for (int r = 0; r < s; ++r) u.row(b.index[r]) = updated.row(r);
    }

    double a = 0.0, bsum = 0.0;
    for (int j = 0; j < kNodes; ++j) {
      a += rule.w[j] * g01[j];
      bsum += rule.w[j] * g12[j];
    }
    dev01 += h * a;
    dev12 += h * bsum;
    emit(t0 + h);
  }

  const double err = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > options.unitarity_tol) {
    throw UnitarityLoss("propagate: |U^dag U - 1| = " + std::to_string(err));
  }
  for (int i = 0; i < n; ++i) u.row(i) *= std::polar(1.0, -kTwoPi * frame_phase(i, dev01, dev12));
  return u;
}

}  // namespace fluxsweet
