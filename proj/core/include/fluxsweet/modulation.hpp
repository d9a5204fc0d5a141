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

#include <vector>

#include "fluxsweet/band.hpp"
#include "fluxsweet/chebyshev.hpp"

namespace fluxsweet {

/// Two-tone flux drive
///   Phi(t) = phi_dc + phi_ac [cos(alpha) cos(2 pi f_m t + theta1)
///                             + sin(alpha) cos(2 pi p f_m t + thetap)].
/// Flux in units of Phi0, f_m in GHz, t in ns.
struct PulseParams {
  double phi_dc = 0.0;
  double phi_ac = 0.0;
  double alpha = 0.0;
  double theta1 = 0.0;
  double thetap = 0.0;
  int p = 1;
  double f_m = 0.25;

  double relative_phase() const { return thetap - p * theta1; }
  /// Throws InvalidArgument on phi_ac < 0, p < 1 or f_m <= 0.
  void validate() const;
};

/// Normalized drive shape M(t).
double drive_shape(const PulseParams& pulse, double t);
double flux_signal(const PulseParams& pulse, double t);

struct Harmonic {
  double amplitude = 0.0;  ///< F_k >= 0, GHz
  double phase = 0.0;      ///< theta_k in (-pi, pi]
};

/// f(t) = f_bar + sum_k F_k cos(2 pi k f_m t + theta_k), k = 1..k_max.
struct ACSpectrum {
  double f_bar = 0.0;
  double f_m = 0.0;
  std::vector<Harmonic> harmonics;
  int k_max = 0;
  int l_max = 0;
  /// nu(k, l) for k = 1..k_max, l = -l_max..l_max, row-major in k.
  std::vector<double> nu_table;
  /// Largest |nu| on the truncation boundary, an upper proxy for dropped terms.
  double max_dropped = 0.0;
  bool truncation_warning = false;

  double nu(int k, int l) const;
  double evaluate(double t) const;
};

struct SpectrumOptions {
  int k_max = 64;
  int l_max = 32;
  /// Cutoffs double until the boundary terms fall below this (GHz).
  double drop_tolerance = 1e-10;
  int max_k = 1024;
};

ACSpectrum ac_spectrum(const BandSpectrum& band, const PulseParams& pulse,
                       Transition transition = Transition::k01,
                       const SpectrumOptions& options = {});

/// Time-averaged frequency from the double Bessel sum; f_m does not enter.
double time_average_frequency(const BandSpectrum& band, const PulseParams& pulse,
                              Transition transition = Transition::k01);

/// f_bar at fixed (phi_dc, phi_ac, alpha, p) as a Chebyshev series in
/// x = cos(theta), theta being the relative phase.
ChebyshevSeries chebyshev_poly(const BandSpectrum& band, double phi_dc, double phi_ac,
                               double alpha, int p, Transition transition = Transition::k01);

/// f_bar and its flux derivatives (GHz / Phi0) as Chebyshev series in x.
struct FbarJet {
  ChebyshevSeries value;
  ChebyshevSeries d_dc;
  ChebyshevSeries d_ac;
};

FbarJet fbar_jet(const BandSpectrum& band, double phi_dc, double phi_ac, double alpha, int p,
                 Transition transition = Transition::k01);

}  // namespace fluxsweet
