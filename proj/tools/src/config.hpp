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

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "fluxsweet/band.hpp"
#include "fluxsweet/modulation.hpp"
#include "fluxsweet/noise.hpp"

namespace fluxsweet::cli {

/// Config problem tied to a field path such as "device.f_max".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  /// Noise defaults sized for command-line runs: 200 shots over 100 us.
  RunConfig() {
    noise.n_shots = 200;
    noise.duration = 1e5;
  }

  DeviceSpec device;
  PulseParams pulse;
  NoiseModel noise;
  double trunc_tol = BandSpectrum::kDefaultTruncationTolerance;
  int threads = 0;

  nlohmann::json echo() const;
};

/// Reads a JSON config. "device" may be an object or a path to a JSON file
/// holding one; when present all six device keys are required. Unknown keys
/// are rejected so typos surface as errors.
RunConfig load_config(const std::string& path);

/// Flag values that override the file; unset optionals leave it untouched.
struct Overrides {
  std::optional<double> f_max, f_min, eta_max, g, f_F01, f_F12;
  std::optional<double> phi_dc, phi_ac, alpha, theta1, thetap, f_m;
  std::optional<int> p;
  std::optional<double> a_dc, a_ac, t_ir, dt, duration;
  std::optional<int> shots;
  std::optional<std::uint64_t> seed;
  std::optional<double> trunc_tol;
  std::optional<int> threads;

  void apply(RunConfig& config) const;
};

}  // namespace fluxsweet::cli
