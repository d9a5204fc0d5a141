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
#include <functional>
#include <optional>
#include <vector>

#include "fluxsweet/band.hpp"
#include "fluxsweet/modulation.hpp"

namespace fluxsweet {

/// 1/f flux-noise strengths. Amplitudes in Phi0, t_ir in ns. A zero t_ir
/// means "use the simulated duration" where a duration exists.
struct NoiseStrengths {
  double a_dc = 33e-6;
  double a_ac = 33e-6;
  double t_ir = 0.0;

  void validate() const;
};

struct Gradient {
  double d_dc = 0.0;  ///< GHz / Phi0
  double d_ac = 0.0;  ///< GHz / Phi0
};

Gradient fbar_gradient(const BandSpectrum& band, const PulseParams& pulse,
                       Transition transition = Transition::k01);

/// lambda^2 = 3/2 - gamma_E - ln(2 pi t / t_ir); may be negative.
double lambda_squared(double t_phi, double t_ir);

struct DephasingRate {
  double rate = 0.0;  ///< 1/ns
  double t_phi = 0.0;  ///< ns; infinite when rate is zero
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Set when lambda^2 < 0 at the working T_phi; rate is then reported as 0.
  bool lambda_undefined = false;
};

/// First-order dephasing rate 2 pi lambda sqrt(A_dc^2 D^2 + A_ac^2 A^2) with
/// lambda iterated to self-consistency with T_phi = 1 / rate.
DephasingRate dephasing_rate(const BandSpectrum& band, const PulseParams& pulse,
                             const NoiseStrengths& noise, double t_phi_guess);

struct SweetSpot {
  PulseParams pulse;  ///< theta1 = 0, thetap = theta in [0, pi]
  double f_bar01 = 0.0;
  double f_bar12 = 0.0;
  double grad_dc = 0.0;
  double grad_ac = 0.0;

  double theta() const { return pulse.thetap; }
  double f_bar(Transition t) const { return t == Transition::k01 ? f_bar01 : f_bar12; }
};

/// Builds the spot record at (phi_dc, phi_ac, alpha, theta) for harmonic p.
SweetSpot make_sweet_spot(const BandSpectrum& band, double phi_dc, double phi_ac, double alpha,
                          double theta, int p, double f_m = 0.25);

struct SearchOptions {
  int alpha_grid = 64;
  /// Polishing target on |grad| (GHz / Phi0).
  double grad_tol = 1e-9;
  /// Interval halvings when the root count changes between alpha nodes.
  int max_refine_depth = 6;
  /// A DC-derivative series with all coefficients below this is treated as
  /// identically zero (odd p at the band extrema).
  double degenerate_tol = 1e-11;
};

/// Sweet spots at fixed (phi_dc, phi_ac, p): intersections in (alpha, x = cos theta)
/// of the zero sets of d f_bar / d phi_dc and d f_bar / d phi_ac.
std::vector<SweetSpot> find_sweet_spots(const BandSpectrum& band, double phi_dc, double phi_ac,
                                        int p, const SearchOptions& options = {});

/// Single-tone (alpha = 0) sweet spots in phi_dc in [0, 1/2], phi_ac in (0, phi_ac_max].
std::vector<SweetSpot> find_monochromatic_sweet_spots(const BandSpectrum& band,
                                                      double phi_ac_max = 1.0,
                                                      double grid_step = 0.01);

struct Atlas {
  int p = 0;
  std::vector<SweetSpot> spots;
  /// Fraction of 1% bins of [f_min, f_max] hit by some f_bar01.
  double coverage = 0.0;
  double f_bar_lo = 0.0;
  double f_bar_hi = 0.0;
};

struct AtlasOptions {
  SearchOptions search;
  int threads = 0;
  int coverage_bins = 100;
  /// Called in grid order after each batch of cells, with the cell index
  /// (dc-major) and its spots.
  std::function<void(std::size_t, const std::vector<SweetSpot>&)> on_cell;
};

Atlas sweep_continuum(const BandSpectrum& band, int p, const std::vector<double>& dc_grid,
                      const std::vector<double>& ac_grid, const AtlasOptions& options = {});

double coverage_fraction(const BandSpectrum& band, const std::vector<SweetSpot>& spots,
                         int bins = 100);

/// Moves a sweet spot along its family (alpha held fixed) until the chosen
/// transition's f_bar equals target, keeping both derivatives at zero.
/// Returns nullopt if Newton fails to converge.
std::optional<SweetSpot> tune_sweet_spot(const BandSpectrum& band, const SweetSpot& seed,
                                         Transition transition, double target,
                                         double grad_tol = 1e-9);

}  // namespace fluxsweet
