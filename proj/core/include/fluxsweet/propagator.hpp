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

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fluxsweet/band.hpp"
#include "fluxsweet/modulation.hpp"
#include "fluxsweet/noise.hpp"

namespace fluxsweet {

/// Basis state: level of the tunable transmon (0, 1, 2) plus a constant
/// energy (GHz) from the other subsystems.
struct Level {
  int tunable = 0;
  double static_energy = 0.0;
};

/// H_ab = strength * mu(t) + h.c., mu being the 01 or 12 dressing factor.
struct CouplingTerm {
  int a = 0;
  int b = 0;
  double strength = 0.0;
  Transition dressing = Transition::k01;
};

class QuantumSystem {
 public:
  QuantumSystem(std::vector<Level> levels, std::vector<CouplingTerm> couplings);

  int dim() const { return static_cast<int>(levels_.size()); }
  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<CouplingTerm>& couplings() const { return couplings_; }
  /// Connected components of the coupling graph, each sorted.
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

 private:
  std::vector<Level> levels_;
  std::vector<CouplingTerm> couplings_;
  std::vector<std::vector<int>> blocks_;
};

struct Drive {
  PulseParams pulse;
  const NoiseTrajectory* noise = nullptr;
  double noise_dt = 1.0;  ///< ns; substeps must divide it
};

struct PropagatorOptions {
  double substep = 0.1;  ///< ns
  double unitarity_tol = 1e-8;
};

/// Receives the elapsed time and the propagator so far, in the frame that
/// rotates every level at its clean time-averaged energy.
using StepObserver = std::function<void(double, const Eigen::MatrixXcd&)>;

/// Propagator over [0, duration] in the averaged frame. The Hamiltonian is
/// treated in the interaction picture of its diagonal part; each substep uses
/// a fourth-order Magnus step whose moments come from 6-point Gauss-Legendre
/// nodes, exponentiated block by block. Throws UnitarityLoss.
Eigen::MatrixXcd propagate(const BandSpectrum& band, const QuantumSystem& system,
                           const Drive& drive, double duration,
                           const PropagatorOptions& options = {},
                           const StepObserver& observer = {});

}  // namespace fluxsweet
