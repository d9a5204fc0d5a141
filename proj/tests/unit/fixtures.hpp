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

#include <cmath>
#include <numbers>

#include "fluxsweet/band.hpp"
#include "fluxsweet/modulation.hpp"

namespace fluxsweet::testing {

inline constexpr double kPi = std::numbers::pi;

/// The reference device: 5.0 to 4.2 GHz band, 200 MHz anharmonicity.
inline const BandSpectrum& reference_band() {
  static const BandSpectrum band = BandSpectrum::calibrate(DeviceSpec{});
  return band;
}

/// Period average of the instantaneous frequency by the trapezoidal rule,
/// which is spectrally accurate for periodic integrands.
inline double quadrature_fbar(const BandSpectrum& band, const PulseParams& pulse,
                              Transition t = Transition::k01, int n = 4096) {
  double s = 0.0;
  const double period = 1.0 / pulse.f_m;
  for (int j = 0; j < n; ++j) {
    s += band.frequency(2.0 * kPi * flux_signal(pulse, period * j / n), t);
  }
  return s / n;
}

}  // namespace fluxsweet::testing
