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

#include "fluxsweet/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "fluxsweet/errors.hpp"
#include "fluxsweet/modulation.hpp"
#include "fluxsweet/parallel.hpp"
#include "fluxsweet/sideband.hpp"

namespace fluxsweet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

using cplx = std::complex<double>;

// Weighted diagonal of V^dag M: tr(V^dag Z M) = sum_l Z_l w_l.
std::array<cplx, 4> overlap_terms(const Eigen::Matrix4cd& m, const Eigen::Matrix4cd& v) {
  std::array<cplx, 4> w{};
  for (int l = 0; l < 4; ++l) {
    for (int k = 0; k < 4; ++k) w[l] += std::conj(v(l, k)) * m(l, k);
  }
  return w;
}

double fidelity_from_overlap(const std::array<cplx, 4>& w, const LocalZ& z) {
  const cplx eb = std::polar(1.0, z.tunable);
  const cplx ea = std::polar(1.0, z.fixed);
  const double tr = std::abs(w[0] + eb * w[1] + ea * w[2] + ea * eb * w[3]);
  return (tr * tr + 4.0) / 20.0;
}

struct GaussRule8 {
  std::array<double, 8> s{};
  std::array<double, 8> w{};
};

const GaussRule8& gauss8() {
  static const GaussRule8 rule = [] {
    GaussRule8 r;
    const std::array<double, 4> x{0.1834346424956498049, 0.5255324099163289858,
                                  0.7966664774136267396, 0.9602898564975362317};
    const std::array<double, 4> w{0.3626837833783619830, 0.3137066458778872873,
                                  0.2223810344533744706, 0.1012285362903762592};
    for (int i = 0; i < 4; ++i) {
      r.s[3 - i] = 0.5 * (1.0 - x[i]);
      r.s[4 + i] = 0.5 * (1.0 + x[i]);
      r.w[3 - i] = r.w[4 + i] = 0.5 * w[i];
    }
    return r;
  }();
  return rule;
}

}  // namespace

QuantumSystem two_transmon_system(const DeviceSpec& spec) {
  std::vector<Level> levels;
  for (int a = 0; a < 3; ++a) {
    const double fixed = a == 0 ? 0.0 : (a == 1 ? spec.f_F01 : spec.f_F01 + spec.f_F12);
    for (int b = 0; b < 3; ++b) levels.push_back({b, fixed});
  }
  std::vector<CouplingTerm> couplings{
      {3, 1, spec.g, Transition::k01},
      {4, 2, kSqrt2 * spec.g, Transition::k12},
      {4, 6, kSqrt2 * spec.g, Transition::k01},
  };
  return QuantumSystem(std::move(levels), std::move(couplings));
}

QuantumSystem tls_system(const std::vector<Tls>& tls) {
  const int n = static_cast<int>(tls.size());
  const int stride = n + 1;
  std::vector<Level> levels;
  for (int q = 0; q < 3; ++q) {
    levels.push_back({q, 0.0});
    for (const auto& t : tls) levels.push_back({q, t.frequency});
  }
  std::vector<CouplingTerm> couplings;
  for (int q = 0; q < 2; ++q) {
    for (int i = 0; i < n; ++i) {
      couplings.push_back({(q + 1) * stride, q * stride + i + 1,
                           tls[i].coupling * std::sqrt(q + 1.0),
                           q == 0 ? Transition::k01 : Transition::k12});
    }
  }
  return QuantumSystem(std::move(levels), std::move(couplings));
}

Eigen::MatrixXcd evolve(const SystemModel& model, const PulseParams& pulse,
                        const NoiseTrajectory* noise, double duration, double noise_dt,
                        const PropagatorOptions& options, const StepObserver& observer) {
  const QuantumSystem system =
      model.tls.empty() ? two_transmon_system(model.spec) : tls_system(model.tls);
  Drive drive{pulse, noise, noise_dt};
  return propagate(model.band, system, drive, duration, options, observer);
}

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kISwap: return "iswap";
    case GateKind::kCZ02: return "cz02";
    case GateKind::kCZ20: return "cz20";
    default: return "idle";
  }
}

GateKind parse_gate_kind(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "iswap") return GateKind::kISwap;
  if (s == "cz02") return GateKind::kCZ02;
  if (s == "cz20") return GateKind::kCZ20;
  if (s == "idle") return GateKind::kIdle;
  throw InvalidArgument("unknown gate kind '" + name + "'");
}

GateResonance gate_resonance(GateKind kind, const DeviceSpec& spec) {
  switch (kind) {
    case GateKind::kISwap: return {Transition::k01, spec.f_F01, 1.0};
    case GateKind::kCZ02: return {Transition::k12, spec.f_F01, kSqrt2};
    case GateKind::kCZ20: return {Transition::k01, spec.f_F12, kSqrt2};
    default: return {Transition::k01, spec.f_F01, 0.0};
  }
}

double analytic_gate_time(GateKind kind, double eps_magnitude, double g) {
  if (!(eps_magnitude > 0.0) || !(g > 0.0)) {
    throw InvalidArgument("analytic_gate_time: weight and coupling must be > 0");
  }
  switch (kind) {
    case GateKind::kISwap: return 1.0 / (4.0 * eps_magnitude * g);
    case GateKind::kCZ02:
    case GateKind::kCZ20: return 1.0 / (2.0 * kSqrt2 * eps_magnitude * g);
    default: throw InvalidArgument("analytic_gate_time: idle has no gate time");
  }
}

Eigen::Matrix4cd ideal_gate(GateKind kind) {
  Eigen::Matrix4cd v = Eigen::Matrix4cd::Identity();
  if (kind == GateKind::kCZ02 || kind == GateKind::kCZ20) v(3, 3) = -1.0;
  if (kind == GateKind::kISwap) {
    v(1, 1) = v(2, 2) = 0.0;
    v(1, 2) = v(2, 1) = cplx(0.0, 1.0);
  }
  return v;
}

double average_fidelity(const Eigen::Matrix4cd& projected, const Eigen::Matrix4cd& target,
                        const LocalZ& z) {
  return fidelity_from_overlap(overlap_terms(projected, target), z);
}

ZFit optimize_local_z(const Eigen::Matrix4cd& projected, const Eigen::Matrix4cd& target) {
  const auto w = overlap_terms(projected, target);
  ZFit best;
  best.fidelity = -1.0;
  for (int start = 0; start < 4; ++start) {
    LocalZ z{0.5 * kPi * start, 0.0};
    for (int it = 0; it < 40; ++it) {
      const cplx ea = std::polar(1.0, z.fixed);
      z.tunable = std::arg(w[0] + ea * w[2]) - std::arg(w[1] + ea * w[3]);
      const cplx eb = std::polar(1.0, z.tunable);
      const double prev = z.fixed;
      z.fixed = std::arg(w[0] + eb * w[1]) - std::arg(w[2] + eb * w[3]);
      if (std::abs(std::remainder(z.fixed - prev, kTwoPi)) < 1e-14) break;
    }
    const double f = fidelity_from_overlap(w, z);
    if (f > best.fidelity) best = {z, f};
  }
  best.z.fixed = std::remainder(best.z.fixed, kTwoPi);
  best.z.tunable = std::remainder(best.z.tunable, kTwoPi);
  return best;
}

Eigen::Matrix4cd project_qubits(const Eigen::MatrixXcd& u) {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = u(kQubitIndex[r], kQubitIndex[c]);
  }
  return m;
}

FidelityReport gate_fidelity(const SystemModel& model, const GateSpec& gate,
                             const NoiseModel* noise, int threads) {
  if (!(gate.gate_time > 0.0)) throw InvalidArgument("gate_fidelity: gate_time must be > 0");
  if (gate.kind != GateKind::kIdle) {
    const GateResonance res = gate_resonance(gate.kind, model.spec);
    const double f_bar = time_average_frequency(model.band, gate.pulse, res.transition);
    const double miss = f_bar + gate.k * gate.pulse.f_m - res.target;
    if (std::abs(miss) > kResonanceTolerance) {
      throw ResonanceMismatch("gate_fidelity: resonance missed by " + std::to_string(miss * 1e3) +
                              " MHz");
    }
  }
  const Eigen::Matrix4cd target = ideal_gate(gate.kind);
  FidelityReport report;
  if (!noise) {
    const Eigen::MatrixXcd u = evolve(model, gate.pulse, nullptr, gate.gate_time);
    report.per_shot = {average_fidelity(project_qubits(u), target, gate.local_z)};
  } else {
    NoiseModel nm = *noise;
    nm.duration = std::max(std::ceil(gate.gate_time / nm.dt - 1e-9) * nm.dt, 2.0 * nm.dt);
    const NoiseGenerator gen(nm);
    report.per_shot.assign(nm.n_shots, 0.0);
    parallel_for(nm.n_shots, threads, [&](std::size_t j) {
      const NoiseTrajectory traj = gen.shot(j);
      const Eigen::MatrixXcd u = evolve(model, gate.pulse, &traj, gate.gate_time, nm.dt);
      report.per_shot[j] = average_fidelity(project_qubits(u), target, gate.local_z);
    });
  }
  report.n_shots = static_cast<int>(report.per_shot.size());
  double sum = 0.0;
  for (double f : report.per_shot) sum += f;
  report.f_avg = sum / report.n_shots;
  return report;
}

std::vector<double> parasitic_frequencies(double eta_bar, double eta_fixed, int j_max) {
  std::vector<double> out;
  for (int j = 1; j <= j_max; ++j) {
    for (double e : {eta_bar, eta_bar + eta_fixed, eta_fixed}) {
      if (e != 0.0) out.push_back(std::abs(e) / j);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FmScanPoint> scan_modulation_frequency(const SystemModel& model, GateKind kind,
                                                   const SweetSpot& spot,
                                                   const std::vector<double>& f_m_values, int k,
                                                   const GateSearchOptions& options) {
  if (kind == GateKind::kIdle) throw InvalidArgument("scan_modulation_frequency: idle gate");
  const GateResonance res = gate_resonance(kind, model.spec);
  const Eigen::Matrix4cd target = ideal_gate(kind);
  const std::vector<double> parasitic = parasitic_frequencies(
      spot.f_bar01 - spot.f_bar12, model.spec.f_F01 - model.spec.f_F12);

  std::vector<FmScanPoint> points(f_m_values.size());
  parallel_for(f_m_values.size(), options.threads, [&](std::size_t i) {
    FmScanPoint& pt = points[i];
    pt.f_m = f_m_values[i];
    for (double fp : parasitic) {
      if (std::abs(pt.f_m - fp) < options.parasitic_guard) pt.parasitic = true;
    }
    PulseParams pulse = spot.pulse;
    pulse.f_m = pt.f_m;
    pt.eps = sideband_magnitude(model.band, pulse, k, res.transition);
    if (!(pt.eps > 0.0)) return;
    pt.tau_analytic = analytic_gate_time(kind, pt.eps, model.spec.g);
    const double t_lo = (1.0 - options.tau_window) * pt.tau_analytic;
    double best = -1.0;
    auto observer = [&](double t, const Eigen::MatrixXcd& u) {
      if (t < t_lo) return;
      const ZFit fit = optimize_local_z(project_qubits(u), target);
      if (fit.fidelity > best) {
        best = fit.fidelity;
        pt.tau = t;
        pt.local_z = fit.z;
      }
    };
    evolve(model, pulse, nullptr, (1.0 + options.tau_window) * pt.tau_analytic, 1.0, {},
           observer);
    pt.infidelity = 1.0 - best;
  });
  return points;
}

GateSpec optimize_gate(const SystemModel& model, GateKind kind, const SweetSpot& spot,
                       const std::vector<double>& f_m_values, int k,
                       const GateSearchOptions& options) {
  GateSpec spec;
  spec.kind = kind;
  spec.k = k;
  spec.pulse = spot.pulse;
  if (kind == GateKind::kIdle) {
    spec.pulse.phi_ac = 0.0;
    spec.gate_time = model.spec.g > 0.0 ? 1.0 / (4.0 * model.spec.g) : 100.0;
    return spec;
  }

  const GateResonance res = gate_resonance(kind, model.spec);
  std::vector<double> grid = f_m_values;
  if (k != 0) {
    const double f_m = (res.target - spot.f_bar(res.transition)) / k;
    if (!(f_m > 0.0)) throw NoFeasibleWindow("optimize_gate: resonance rule gives f_m <= 0");
    grid = {f_m};
  } else if (std::abs(spot.f_bar(res.transition) - res.target) > kResonanceTolerance) {
    throw ResonanceMismatch("optimize_gate: sweet spot is not resonant with the target");
  }
  if (grid.empty()) throw NoFeasibleWindow("optimize_gate: empty modulation-frequency window");

  const auto scan = scan_modulation_frequency(model, kind, spot, grid, k, options);
  const FmScanPoint* best = nullptr;
  for (const auto& pt : scan) {
    if (pt.parasitic || !(pt.tau > 0.0)) continue;
    if (!best || pt.infidelity < best->infidelity) best = &pt;
  }
  if (!best) throw NoFeasibleWindow("optimize_gate: every f_m sits on a parasitic resonance");
  spec.pulse.f_m = best->f_m;
  spec.gate_time = best->tau;
  spec.local_z = best->local_z;
  return spec;
}

std::optional<SweetSpot> resonant_sweet_spot(const BandSpectrum& band,
                                             const std::vector<SweetSpot>& spots, GateKind kind,
                                             const DeviceSpec& spec, double f_m, double window,
                                             int threads) {
  const GateResonance res = gate_resonance(kind, spec);
  std::vector<const SweetSpot*> candidates;
  for (const auto& s : spots) {
    if (std::abs(s.f_bar(res.transition) - res.target) < window) candidates.push_back(&s);
  }
  std::vector<std::optional<SweetSpot>> tuned(candidates.size());
  std::vector<double> weight(candidates.size(), -1.0);
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    tuned[i] = tune_sweet_spot(band, *candidates[i], res.transition, res.target);
    if (!tuned[i]) return;
    tuned[i]->pulse.f_m = f_m;
    weight[i] = sideband_magnitude(band, tuned[i]->pulse, 0, res.transition);
  });
  std::optional<SweetSpot> best;
  double best_w = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (tuned[i] && weight[i] > best_w) {
      best_w = weight[i];
      best = tuned[i];
    }
  }
  return best;
}

const char* to_string(DecayKind kind) {
  switch (kind) {
    case DecayKind::kExponential: return "exponential";
    case DecayKind::kGaussian: return "gaussian";
    default: return "unresolved";
  }
}

DephasingResult dephasing_time(const BandSpectrum& band, const PulseParams& pulse,
                               const NoiseModel& noise, int threads, int n_samples) {
  noise.validate();
  pulse.validate();
  if (noise.n_shots < 2) throw InvalidArgument("dephasing_time: need at least 2 shots");
  const std::size_t n_steps = noise.steps();
  const double dt = noise.dt;

  // Per hold step: integrals of f^(a)(Phi(t)) M(t)^b over the step, a = 1..3,
  // b = 0..a, stored as [1,0 1,1 2,0 2,1 2,2 3,0 3,1 3,2 3,3].
  const GaussRule8& rule = gauss8();
  const int n_sub =
      pulse.phi_ac > 0.0 ? 1 + static_cast<int>(std::ceil(4.0 * dt * pulse.f_m * pulse.p)) : 1;
  std::vector<std::array<double, 9>> moments(n_steps);
  parallel_for(n_steps, threads, [&](std::size_t s) {
    std::array<double, 9> acc{};
    const double h = dt / n_sub;
    for (int sub = 0; sub < n_sub; ++sub) {
      for (int j = 0; j < 8; ++j) {
        const double t = static_cast<double>(s) * dt + (sub + rule.s[j]) * h;
        const double m = pulse.phi_ac > 0.0 ? drive_shape(pulse, t) : 0.0;
        const auto jet = band.frequency_jet(kTwoPi * (pulse.phi_dc + pulse.phi_ac * m));
        const double f1 = kTwoPi * jet[1];
        const double f2 = kTwoPi * kTwoPi * jet[2];
        const double f3 = kTwoPi * kTwoPi * kTwoPi * jet[3];
        const double w = rule.w[j] * h;
        acc[0] += w * f1;
        acc[1] += w * f1 * m;
        acc[2] += w * f2;
        acc[3] += w * f2 * m;
        acc[4] += w * f2 * m * m;
        acc[5] += w * f3;
        acc[6] += w * f3 * m;
        acc[7] += w * f3 * m * m;
        acc[8] += w * f3 * m * m * m;
      }
    }
    moments[s] = acc;
  });

  std::vector<std::size_t> sample_steps;
  for (int i = 0; i < n_samples; ++i) {
    const double u = n_samples == 1 ? 1.0 : static_cast<double>(i) / (n_samples - 1);
    const auto idx = static_cast<std::size_t>(
        std::llround(std::exp(u * std::log(static_cast<double>(n_steps)))));
    if (sample_steps.empty() || idx > sample_steps.back()) sample_steps.push_back(idx);
  }
  const std::size_t n_out = sample_steps.size();

  // Without a tone the multiplicative channel cannot act; skip synthesizing it.
  NoiseModel effective = noise;
  if (!(pulse.phi_ac > 0.0)) effective.strengths.a_ac = 0.0;
  const NoiseGenerator gen(effective);
  std::vector<cplx> shots(static_cast<std::size_t>(noise.n_shots) * n_out);
  parallel_for(noise.n_shots, threads, [&](std::size_t j) {
    const NoiseTrajectory traj = gen.shot(j);
    double phase = 0.0;
    std::size_t next = 0;
    for (std::size_t s = 0; s < n_steps && next < n_out; ++s) {
      const double d = traj.dc[s];
      const double a = traj.ac[s];
      const auto& I = moments[s];
      const double first = I[0] * d + I[1] * a;
      const double second = 0.5 * (I[2] * d * d + 2.0 * I[3] * d * a + I[4] * a * a);
      const double third = (I[5] * d * d * d + 3.0 * I[6] * d * d * a + 3.0 * I[7] * d * a * a +
                            I[8] * a * a * a) / 6.0;
      phase += kTwoPi * (first + second + third);
      while (next < n_out && sample_steps[next] == s + 1) {
        shots[j * n_out + next] = std::polar(1.0, phase);
        ++next;
      }
    }
  });

  DephasingResult out;
  out.times.resize(n_out);
  out.coherence.resize(n_out);
  for (std::size_t k = 0; k < n_out; ++k) {
    cplx sum = 0.0;
    for (int j = 0; j < noise.n_shots; ++j) sum += shots[static_cast<std::size_t>(j) * n_out + k];
    out.times[k] = static_cast<double>(sample_steps[k]) * dt;
    out.coherence[k] = std::abs(sum) / noise.n_shots;
  }

  // The lower edge rises to the finite-shot floor |<e^{i phi}>| ~ 1/sqrt(N),
  // and the window closes at the first sample below it so that the noisy
  // plateau after the decay never enters the fit.
  const double floor = std::max(0.05, 2.0 / std::sqrt(static_cast<double>(noise.n_shots)));
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < n_out; ++k) {
    const double c = out.coherence[k];
    if (c < floor) break;
    if (c > 0.9) continue;
    const double x = std::log(out.times[k]);
    const double y = std::log(-std::log(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  out.fit_points = count;
  const bool decayed = std::any_of(out.coherence.begin(), out.coherence.end(),
                                   [](double c) { return c < std::exp(-1.0); });
  if (!decayed) {
    out.t_phi = static_cast<double>(n_steps) * dt;
    out.beta = std::numeric_limits<double>::quiet_NaN();
    out.lower_bound = true;
    out.decay_kind = DecayKind::kUnresolved;
    return out;
  }
  if (count < 3) {
    throw FitFailure("dephasing_time: fewer than 3 samples inside the fit window");
  }
  const double denom = count * sxx - sx * sx;
  out.beta = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - out.beta * sx) / count;
  // y = beta ln t - beta ln T_phi.
  out.t_phi = std::exp(-intercept / out.beta);
  out.decay_kind = out.beta < 1.4 ? DecayKind::kExponential : DecayKind::kGaussian;
  return out;
}

TlsLeakage tls_leakage(const SystemModel& model, const PulseParams& pulse, double window) {
  if (model.tls.empty()) throw InvalidArgument("tls_leakage: no TLS in the model");
  if (!(window > 0.0)) throw InvalidArgument("tls_leakage: window must be > 0");
  const int stride = static_cast<int>(model.tls.size()) + 1;
  TlsLeakage out;
  auto observer = [&](double t, const Eigen::MatrixXcd& u) {
    if (std::abs(t - std::round(t)) > 1e-6) return;
    const double s = std::abs(u(0, 0)) + std::abs(u(stride, stride));
    const double err = 1.0 - (s * s + 2.0) / 6.0;
    out.times.push_back(t);
    out.errors.push_back(err);
    if (err > out.max_error) {
      out.max_error = err;
      out.time_of_max = t;
    }
  };
  evolve(model, pulse, nullptr, window, 1.0, {}, observer);
  return out;
}

}  // namespace fluxsweet
