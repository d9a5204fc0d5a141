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

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace fluxsweet {

/// Electrical and spectral description of a flux-tunable transmon and the
/// fixed-frequency transmon it couples to. All frequencies in GHz.
struct DeviceSpec {
  double f_max = 5.0;    ///< 01 frequency at zero flux
  double f_min = 4.2;    ///< 01 frequency at half a flux quantum
  double eta_max = 0.2;  ///< anharmonicity magnitude at zero flux
  double g = 0.0025;     ///< capacitive coupling, defined at the band maximum
  double f_F01 = 4.0;    ///< fixed transmon 01 frequency
  double f_F12 = 3.8;    ///< fixed transmon 12 frequency

  /// Throws InvalidArgument when the ordering/positivity constraints fail.
  void validate() const;
};

enum class Transition { k01, k12 };

const char* to_string(Transition t);

/// Transmon energies in GHz. The effective junction energy of the SQUID is
/// E_J(phi) = sqrt(E_J1^2 + E_J2^2 + 2 E_J1 E_J2 cos phi).
struct SquidTransmon {
  double e_c = 0.0;
  double e_j1 = 0.0;
  double e_j2 = 0.0;

  double josephson_energy(double phi_ext) const;
  /// Expansion parameter xi = sqrt(2 E_C / E_J(phi)).
  double xi(double phi_ext) const;
};

// Perturbative transmon spectrum in xi, truncated after the xi^4 correction.
double transmon_f01(double e_j, double e_c);
double transmon_anharmonicity(double e_j, double e_c);

// Charge matrix-element series for the 01 and 12 transitions (up to xi^6,
// overall xi^{-1/2} prefactor included).
double zeta01(double xi);
double zeta12(double xi);

struct CouplingFactors {
  double mu01 = 1.0;
  double mu12 = 1.0;
};

/// Flux-periodic transition bands of one tunable transmon, stored as cosine
/// series f(phi) = sum_n F_n cos(n phi) in the phase bias phi = 2 pi Phi / Phi0.
/// Immutable once built.
class BandSpectrum {
 public:
  static constexpr int kDefaultGridSize = 4096;
  static constexpr double kDefaultTruncationTolerance = 1e-8;
  /// Largest xi for which the perturbative series are trusted.
  static constexpr double kMaxXi = 0.5;

  /// Inverts (f_max, f_min, eta_max) into (E_C, E_J1, E_J2) and projects the
  /// resulting bands onto cosine series. Throws NonTransmon or NoConvergence.
  static BandSpectrum calibrate(const DeviceSpec& spec,
                                double trunc_tol = kDefaultTruncationTolerance,
                                int grid_size = kDefaultGridSize);

  /// Builds the band directly from circuit energies.
  static BandSpectrum from_transmon(const SquidTransmon& transmon,
                                    double trunc_tol = kDefaultTruncationTolerance,
                                    int grid_size = kDefaultGridSize);

  /// Cosine-series value; even and 2 pi periodic in phi_ext.
  double frequency(double phi_ext, Transition t = Transition::k01) const;
  /// Both transitions with a single cos() evaluation.
  std::pair<double, double> frequencies(double phi_ext) const;
  /// Value and first three derivatives with respect to phi_ext (radians).
  std::array<double, 4> frequency_jet(double phi_ext, Transition t = Transition::k01) const;

  /// mu01, mu12 relative to the reference flux Phi* = 0. Throws SeriesDivergence
  /// if xi(phi_ext) exceeds kMaxXi.
  CouplingFactors coupling_factors(double phi_ext) const;

  std::span<const double> coefficients(Transition t) const {
    return t == Transition::k01 ? f01_ : f12_;
  }
  int truncation_order() const { return static_cast<int>(f01_.size()) - 1; }
  double truncation_tolerance() const { return trunc_tol_; }

  const SquidTransmon& transmon() const { return transmon_; }
  double f_max() const { return frequency(0.0); }
  double f_min() const;

  /// Flux-periodic tabulation of the dressing factors on the projection grid,
  /// phi_j = 2 pi j / N.
  std::span<const double> mu01_samples() const { return mu01_samples_; }
  std::span<const double> mu12_samples() const { return mu12_samples_; }

 private:
  BandSpectrum() = default;

  SquidTransmon transmon_;
  double trunc_tol_ = kDefaultTruncationTolerance;
  double xi_ref_ = 0.0;
  double zeta01_ref_ = 1.0;
  double zeta12_ref_ = 1.0;
  std::vector<double> f01_;
  std::vector<double> f12_;
  std::vector<double> mu01_samples_;
  std::vector<double> mu12_samples_;
};

}  // namespace fluxsweet
