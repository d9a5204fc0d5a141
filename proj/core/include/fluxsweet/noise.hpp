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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "fluxsweet/modulation.hpp"
#include "fluxsweet/sweetspot.hpp"

namespace fluxsweet {

/// Times in ns. strengths.t_ir == 0 selects the shot duration as cutoff.
struct NoiseModel {
  NoiseStrengths strengths;
  double dt = 1.0;
  double duration = 1000.0;
  int n_shots = 1;
  std::uint64_t seed = 0;

  /// Throws DurationTooShort if duration < 2 dt, InvalidArgument otherwise.
  void validate() const;
  std::size_t steps() const;
  double infrared_cutoff() const;
};

/// Flux offsets (Phi0) held constant over each step of length dt.
struct NoiseTrajectory {
  std::vector<double> dc;
  std::vector<double> ac;

  std::size_t size() const { return dc.size(); }
};

/// Gaussian 1/f noise by frequency-domain colouring. The spectral density is
/// A^2/|f| two-sided (2 A^2 / f one-sided) between 1/t_ir and Nyquist, zero
/// below. The record spans max(duration, t_ir) and the first `steps()`
/// samples are returned. Shot j of a channel depends only on (seed, j), so
/// trajectories are reproducible under any evaluation order.
class NoiseGenerator {
 public:
  explicit NoiseGenerator(const NoiseModel& model);
  ~NoiseGenerator();
  NoiseGenerator(const NoiseGenerator&) = delete;
  NoiseGenerator& operator=(const NoiseGenerator&) = delete;

  const NoiseModel& model() const { return model_; }
  std::size_t record_length() const { return record_; }

  NoiseTrajectory shot(std::size_t index) const;

 private:
  void colour(std::uint64_t stream, double amplitude, std::vector<double>& out) const;

  struct Plan;
  NoiseModel model_;
  std::size_t record_ = 0;
  std::unique_ptr<Plan> plan_;
};

/// Noisy flux at step t_index (time t_index * dt):
/// (phi_dc + dc[i]) + (phi_ac + ac[i]) M(t). Throws IndexOutOfRange.
double apply(const PulseParams& pulse, const NoiseTrajectory& traj, std::size_t t_index,
             double dt = 1.0);

/// Columns t_ns, delta_dc, delta_ac.
void write_trajectory_csv(std::ostream& os, const NoiseTrajectory& traj, double dt);

}  // namespace fluxsweet
