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

#include "fluxsweet/noise.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <ostream>
#include <random>

#include "fftw_lock.hpp"
#include "fluxsweet/errors.hpp"

namespace fluxsweet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

struct NoiseGenerator::Plan {
  fftw_plan c2r = nullptr;
};

void NoiseModel::validate() const {
  strengths.validate();
  if (!(dt > 0.0)) throw InvalidArgument("NoiseModel: dt must be > 0");
  if (!(duration >= 2.0 * dt)) throw DurationTooShort("NoiseModel: duration must be >= 2 dt");
  if (n_shots < 1) throw InvalidArgument("NoiseModel: n_shots must be >= 1");
}

std::size_t NoiseModel::steps() const {
  return static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
}

double NoiseModel::infrared_cutoff() const {
  return strengths.t_ir > 0.0 ? strengths.t_ir : duration;
}

NoiseGenerator::NoiseGenerator(const NoiseModel& model) : model_(model) {
  model_.validate();
  const double t_ir = model_.infrared_cutoff();
  const auto ir_steps = static_cast<std::size_t>(std::ceil(t_ir / model_.dt - 1e-9));
  record_ = std::max(model_.steps(), ir_steps);
  if (record_ % 2) ++record_;

  plan_ = std::make_unique<Plan>();
  std::lock_guard lock(detail::fftw_planner_mutex());
  double* real = fftw_alloc_real(record_);
  fftw_complex* spec = fftw_alloc_complex(record_ / 2 + 1);
  plan_->c2r = fftw_plan_dft_c2r_1d(static_cast<int>(record_), spec, real, FFTW_ESTIMATE);
  fftw_free(real);
  fftw_free(spec);
}

NoiseGenerator::~NoiseGenerator() {
  if (plan_ && plan_->c2r) {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan_->c2r);
  }
}

void NoiseGenerator::colour(std::uint64_t stream, double amplitude,
                            std::vector<double>& out) const {
  const std::size_t steps = model_.steps();
  out.assign(steps, 0.0);
  if (amplitude == 0.0) return;

  const std::size_t m = record_;
  const std::size_t half = m / 2;
  const double df = 1.0 / (static_cast<double>(m) * model_.dt);
  const double f_ir = 1.0 / model_.infrared_cutoff();

  std::mt19937_64 rng(splitmix64(stream));
  std::normal_distribution<double> normal(0.0, 1.0);

  fftw_complex* spec = fftw_alloc_complex(half + 1);
  double* real = fftw_alloc_real(m);
  spec[0][0] = spec[0][1] = 0.0;
  for (std::size_t k = 1; k <= half; ++k) {
    const double f = static_cast<double>(k) * df;
    // Draw both normals for every bin so the stream layout is cutoff-independent.
    const double a = normal(rng);
    const double b = normal(rng);
    if (f < f_ir * (1.0 - 1e-12)) {
      spec[k][0] = spec[k][1] = 0.0;
      continue;
    }
    const double sigma = std::sqrt(2.0 * amplitude * amplitude / f * df);
    if (k == half) {
      spec[k][0] = sigma * a;
      spec[k][1] = 0.0;
    } else {
      spec[k][0] = 0.5 * sigma * a;
      spec[k][1] = -0.5 * sigma * b;
    }
  }
  fftw_execute_dft_c2r(plan_->c2r, spec, real);
  std::copy(real, real + steps, out.begin());
  fftw_free(spec);
  fftw_free(real);
}

NoiseTrajectory NoiseGenerator::shot(std::size_t index) const {
  NoiseTrajectory traj;
  const std::uint64_t base = splitmix64(model_.seed ^ splitmix64(index));
  colour(base ^ 0x6463ull, model_.strengths.a_dc, traj.dc);
  colour(base ^ 0x6163ull, model_.strengths.a_ac, traj.ac);
  return traj;
}

double apply(const PulseParams& pulse, const NoiseTrajectory& traj, std::size_t t_index,
             double dt) {
  if (t_index >= traj.dc.size() || t_index >= traj.ac.size()) {
    throw IndexOutOfRange("apply: step index beyond trajectory");
  }
  const double t = static_cast<double>(t_index) * dt;
  return pulse.phi_dc + traj.dc[t_index] + (pulse.phi_ac + traj.ac[t_index]) * drive_shape(pulse, t);
}

void write_trajectory_csv(std::ostream& os, const NoiseTrajectory& traj, double dt) {
  os << "t_ns,delta_dc,delta_ac\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << static_cast<double>(i) * dt << ',' << traj.dc[i] << ',' << traj.ac[i] << '\n';
  }
  os.precision(old);
}

}  // namespace fluxsweet
