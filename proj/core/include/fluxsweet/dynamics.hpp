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
#include <optional>
#include <string>
#include <vector>

#include "fluxsweet/band.hpp"
#include "fluxsweet/noise.hpp"
#include "fluxsweet/propagator.hpp"
#include "fluxsweet/sweetspot.hpp"

namespace fluxsweet {

struct Tls {
  double frequency = 0.0;  ///< GHz
  double coupling = 0.0;   ///< GHz
};

/// Tunable transmon plus either the fixed transmon (empty tls) or a TLS set.
struct SystemModel {
  BandSpectrum band;
  DeviceSpec spec;
  std::vector<Tls> tls;
};

/// Basis |fixed, tunable> with index 3 * fixed + tunable. Couplings:
/// |01> <-> |10> (g mu01), |11> <-> |02> (sqrt2 g mu12), |11> <-> |20> (sqrt2 g mu01).
QuantumSystem two_transmon_system(const DeviceSpec& spec);

/// Basis |q, m> with index q (1 + n) + m; m = 0 all TLS in ground, m = i + 1
/// TLS i excited. Couplings |q+1, 0> <-> |q, i+1> with g_i sqrt(q+1) mu.
QuantumSystem tls_system(const std::vector<Tls>& tls);

/// Computational-subspace indices of the two-transmon basis: 00, 01, 10, 11.
inline constexpr int kQubitIndex[4] = {0, 1, 3, 4};

/// Propagator of the model's system in the averaged frame.
Eigen::MatrixXcd evolve(const SystemModel& model, const PulseParams& pulse,
                        const NoiseTrajectory* noise, double duration, double noise_dt = 1.0,
                        const PropagatorOptions& options = {},
                        const StepObserver& observer = {});

enum class GateKind { kISwap, kCZ02, kCZ20, kIdle };

const char* to_string(GateKind kind);
/// Accepts iswap, cz02, cz20, idle (case-insensitive).
GateKind parse_gate_kind(const std::string& name);

struct GateResonance {
  Transition transition = Transition::k01;
  double target = 0.0;          ///< fixed-transmon frequency to match, GHz
  double coupling_scale = 1.0;  ///< 1 or sqrt(2)
};

GateResonance gate_resonance(GateKind kind, const DeviceSpec& spec);

/// 1 / (4 |eps| g) for iSWAP, 1 / (2 sqrt2 |eps| g) for CZ; ns.
double analytic_gate_time(GateKind kind, double eps_magnitude, double g);

/// Target unitary on the computational subspace (00, 01, 10, 11).
Eigen::Matrix4cd ideal_gate(GateKind kind);

struct LocalZ {
  double fixed = 0.0;     ///< phase on the fixed transmon's |1>
  double tunable = 0.0;   ///< phase on the tunable transmon's |1>
};

/// (|tr(V^dag Z M)|^2 + d) / (d^2 + d) for d = 4 and Z = diag(1, e^{i b}, e^{i a}, e^{i (a+b)}).
double average_fidelity(const Eigen::Matrix4cd& projected, const Eigen::Matrix4cd& target,
                        const LocalZ& z);

struct ZFit {
  LocalZ z;
  double fidelity = 0.0;
};

/// Maximizes average_fidelity over the two local phases.
ZFit optimize_local_z(const Eigen::Matrix4cd& projected, const Eigen::Matrix4cd& target);

Eigen::Matrix4cd project_qubits(const Eigen::MatrixXcd& u);

struct GateSpec {
  GateKind kind = GateKind::kIdle;
  int k = 0;  ///< sideband index
  PulseParams pulse;
  double gate_time = 0.0;  ///< ns
  LocalZ local_z;
};

struct FidelityReport {
  double f_avg = 0.0;
  std::vector<double> per_shot;
  int n_shots = 0;
};

/// Resonance tolerance for gate_fidelity, GHz (1 kHz).
inline constexpr double kResonanceTolerance = 1e-6;

/// Noiseless when noise is null; otherwise n_shots trajectories covering the
/// gate time, each evaluated with the gate's fixed local Z.
/// Throws ResonanceMismatch if f_bar + k f_m misses the target by > 1 kHz.
FidelityReport gate_fidelity(const SystemModel& model, const GateSpec& gate,
                             const NoiseModel* noise = nullptr, int threads = 0);

/// Modulation frequencies where spectator transitions come into resonance:
/// eta_bar / j, (eta_bar + eta_F) / j, eta_F / j for j = 1..j_max.
std::vector<double> parasitic_frequencies(double eta_bar, double eta_fixed, int j_max = 8);

struct FmScanPoint {
  double f_m = 0.0;
  double eps = 0.0;            ///< |eps_k| of the gate transition
  double tau_analytic = 0.0;
  double tau = 0.0;            ///< optimized gate time
  double infidelity = 1.0;
  LocalZ local_z;
  bool parasitic = false;      ///< within the guard band of a parasitic resonance
};

struct GateSearchOptions {
  double tau_window = 0.3;      ///< search tau in [(1 - w), (1 + w)] * analytic
  double parasitic_guard = 0.004;  ///< GHz
  int threads = 0;
};

/// Noiseless infidelity after optimizing the gate time and local Z at each f_m.
std::vector<FmScanPoint> scan_modulation_frequency(const SystemModel& model, GateKind kind,
                                                   const SweetSpot& spot,
                                                   const std::vector<double>& f_m_values,
                                                   int k = 0,
                                                   const GateSearchOptions& options = {});

/// Best non-parasitic point of the scan, or the resonance-rule f_m when k != 0.
/// IDLE returns a zero-amplitude pulse. Throws NoFeasibleWindow, ResonanceMismatch.
GateSpec optimize_gate(const SystemModel& model, GateKind kind, const SweetSpot& spot,
                       const std::vector<double>& f_m_values, int k = 0,
                       const GateSearchOptions& options = {});

/// Among spots, tunes each toward the gate resonance (alpha held fixed) and
/// returns the tuned spot of largest |eps_0| at f_m. Spots further than
/// `window` GHz from the target are skipped.
std::optional<SweetSpot> resonant_sweet_spot(const BandSpectrum& band,
                                             const std::vector<SweetSpot>& spots, GateKind kind,
                                             const DeviceSpec& spec, double f_m,
                                             double window = 0.05, int threads = 0);

enum class DecayKind { kExponential, kGaussian, kUnresolved };

const char* to_string(DecayKind kind);

struct DephasingResult {
  double t_phi = 0.0;  ///< ns; the window length when lower_bound is set
  double beta = 0.0;   ///< NaN when unresolved
  DecayKind decay_kind = DecayKind::kUnresolved;
  bool lower_bound = false;
  int fit_points = 0;
  std::vector<double> times;      ///< ns
  std::vector<double> coherence;  ///< |<exp(i dphi)>|
};

/// Free-induction decay of the tunable qubit under 1/f flux noise. The qubit
/// Hamiltonian is diagonal, so each shot reduces to the accumulated phase
/// difference between noisy and clean 01 frequency; the noise enters through
/// a third-order expansion in the flux offsets around the clean trajectory,
/// integrated per hold step. Fits exp(-(t / T_phi)^beta) on C in [c_lo, 0.9]
/// up to the first sample below c_lo = max(0.05, 2 / sqrt(n_shots)).
DephasingResult dephasing_time(const BandSpectrum& band, const PulseParams& pulse,
                               const NoiseModel& noise, int threads = 0,
                               int n_samples = 160);

struct TlsLeakage {
  double max_error = 0.0;
  double time_of_max = 0.0;       ///< ns
  std::vector<double> times;      ///< ns, one per noise-free hold step
  std::vector<double> errors;
};

/// Identity error on the qubit subspace, 1 - ((|M00| + |M11|)^2 + 2) / 6 with
/// the optimal relative Z phase, sampled every ns over the window.
TlsLeakage tls_leakage(const SystemModel& model, const PulseParams& pulse,
                       double window = 1000.0);

}  // namespace fluxsweet
