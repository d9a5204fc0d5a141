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

#include <complex>
#include <optional>
#include <vector>

#include "fluxsweet/band.hpp"
#include "fluxsweet/modulation.hpp"
#include "fluxsweet/sweetspot.hpp"

namespace fluxsweet {

/// Weights eps_k of mu(t) exp(i 2 pi int_0^t (f - f_bar)) = sum_k eps_k exp(i 2 pi k f_m t).
/// The 2 pi converts the GHz frequencies into a phase in radians.
struct SidebandSet {
  int k_max = 0;
  std::vector<std::complex<double>> weights;  ///< index k + k_max
  double eps_tot = 0.0;                        ///< sqrt of the period mean of mu^2
  double f_bar = 0.0;
  double f_m = 0.0;
  Transition transition = Transition::k01;
  int samples = 0;  ///< quadrature points per period after refinement
  /// |eps_{+-K}| above 1e-6: the stored window misses weight.
  bool alias_warning = false;

  std::complex<double> weight(int k) const;
  /// sum over the stored window of |eps_k|^2.
  double window_power() const;
};

struct SidebandOptions {
  int k_max = 64;
  int min_samples = 1024;
  int max_samples = 1 << 20;
  double stability_tol = 1e-10;
};

SidebandSet sideband_weights(const BandSpectrum& band, const PulseParams& pulse,
                             Transition transition = Transition::k01,
                             const SidebandOptions& options = {});

/// |eps_k| only, with a smaller window; intended for scans.
double sideband_magnitude(const BandSpectrum& band, const PulseParams& pulse, int k,
                          Transition transition = Transition::k01);

struct WeightQuery {
  int k = 0;
  /// Fixed modulation frequency (GHz); <= 0 selects the resonance rule
  /// f_m = (target - f_bar) / k per spot, which requires k != 0.
  double f_m = 0.25;
  double target = 0.0;
  Transition transition = Transition::k01;
};

struct WeightedSpot {
  SweetSpot spot;
  double weight = 0.0;   ///< |eps_k|
  double eps_tot = 0.0;
};

/// Sweet spot of largest |eps_k|. Throws EmptyAtlas when no spot qualifies.
WeightedSpot maximize_weight(const BandSpectrum& band, const std::vector<SweetSpot>& spots,
                             const WeightQuery& query, int threads = 0);

}  // namespace fluxsweet
