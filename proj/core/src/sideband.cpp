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

#include "fluxsweet/sideband.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fftw_lock.hpp"
#include "fluxsweet/errors.hpp"
#include "fluxsweet/parallel.hpp"

namespace fluxsweet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using cplx = std::complex<double>;

// In-place complex DFT, sign -1 (forward) or +1 (backward), unnormalized.
void dft(std::vector<cplx>& data, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(detail::fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

struct PeriodSamples {
  std::vector<cplx> weights;  // all N harmonics, index k mod N
  double eps_tot = 0.0;
  double f_bar = 0.0;
};

PeriodSamples sample_period(const BandSpectrum& band, const PulseParams& pulse,
                            Transition transition, int n) {
  std::vector<cplx> freq(n);
  std::vector<double> mu(n);
  double mu2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / (n * pulse.f_m);
    const double phi = kTwoPi * flux_signal(pulse, t);
    freq[j] = band.frequency(phi, transition);
    const CouplingFactors c = band.coupling_factors(phi);
    mu[j] = transition == Transition::k01 ? c.mu01 : c.mu12;
    mu2 += mu[j] * mu[j];
  }

  // Integrate f - f_bar spectrally: each harmonic c_k e^{i 2 pi k f_m t}
  // contributes c_k (e^{i 2 pi k f_m t} - 1) / (i k f_m) to the phase.
  dft(freq, -1);
  PeriodSamples out;
  out.f_bar = freq[0].real() / n;
  out.eps_tot = std::sqrt(mu2 / n);
  std::vector<cplx> phase(n, 0.0);
  cplx offset = 0.0;
  for (int j = 1; j < n; ++j) {
    const int k = j <= n / 2 ? j : j - n;
    if (2 * j == n) continue;
    phase[j] = freq[j] / static_cast<double>(n) / (cplx(0.0, 1.0) * (k * pulse.f_m));
    offset -= phase[j];
  }
  phase[0] = offset;
  dft(phase, +1);

  out.weights.resize(n);
  for (int j = 0; j < n; ++j) out.weights[j] = mu[j] * std::polar(1.0, phase[j].real());
  dft(out.weights, -1);
  for (auto& w : out.weights) w /= static_cast<double>(n);
  return out;
}

cplx pick(const std::vector<cplx>& all, int k) {
  const int n = static_cast<int>(all.size());
  if (std::abs(k) >= n / 2) return 0.0;
  return all[(k % n + n) % n];
}

}  // namespace

std::complex<double> SidebandSet::weight(int k) const {
  if (k < -k_max || k > k_max) return 0.0;
  return weights[k + k_max];
}

double SidebandSet::window_power() const {
  double s = 0.0;
  for (const auto& w : weights) s += std::norm(w);
  return s;
}

SidebandSet sideband_weights(const BandSpectrum& band, const PulseParams& pulse,
                             Transition transition, const SidebandOptions& options) {
  pulse.validate();
  if (options.k_max < 0) throw InvalidArgument("sideband_weights: k_max must be >= 0");
  int n = std::max(options.min_samples, 4 * (options.k_max + 1));
  PeriodSamples cur = sample_period(band, pulse, transition, n);
  while (true) {
    if (2 * n > options.max_samples) break;
    PeriodSamples next = sample_period(band, pulse, transition, 2 * n);
    double diff = std::abs(next.eps_tot - cur.eps_tot);
    for (int k = -options.k_max; k <= options.k_max; ++k) {
      diff = std::max(diff, std::abs(pick(next.weights, k) - pick(cur.weights, k)));
    }
    cur = std::move(next);
    n *= 2;
    if (diff < options.stability_tol) break;
  }

  SidebandSet out;
  out.k_max = options.k_max;
  out.weights.resize(2 * options.k_max + 1);
  for (int k = -options.k_max; k <= options.k_max; ++k) {
    out.weights[k + options.k_max] = pick(cur.weights, k);
  }
  out.eps_tot = cur.eps_tot;
  out.f_bar = cur.f_bar;
  out.f_m = pulse.f_m;
  out.transition = transition;
  out.samples = n;
  out.alias_warning = std::abs(out.weight(options.k_max)) > 1e-6 ||
                      std::abs(out.weight(-options.k_max)) > 1e-6;
  return out;
}

double sideband_magnitude(const BandSpectrum& band, const PulseParams& pulse, int k,
                          Transition transition) {
  SidebandOptions opt;
  opt.k_max = std::abs(k) + 4;
  opt.min_samples = 256;
  opt.stability_tol = 1e-9;
  return std::abs(sideband_weights(band, pulse, transition, opt).weight(k));
}

WeightedSpot maximize_weight(const BandSpectrum& band, const std::vector<SweetSpot>& spots,
                             const WeightQuery& query, int threads) {
  if (spots.empty()) throw EmptyAtlas("maximize_weight: no sweet spots");
  const bool rule = !(query.f_m > 0.0);
  if (rule && query.k == 0) {
    throw InvalidArgument("maximize_weight: the resonance rule needs k != 0");
  }

  std::vector<WeightedSpot> scored(spots.size());
  std::vector<char> valid(spots.size(), 0);
  parallel_for(spots.size(), threads, [&](std::size_t i) {
    SweetSpot s = spots[i];
    s.pulse.f_m = rule ? (query.target - s.f_bar(query.transition)) / query.k : query.f_m;
    if (!(s.pulse.f_m > 0.0)) return;
    SidebandOptions opt;
    opt.k_max = std::abs(query.k) + 4;
    opt.min_samples = 256;
    opt.stability_tol = 1e-9;
    const SidebandSet set = sideband_weights(band, s.pulse, query.transition, opt);
    scored[i] = {s, std::abs(set.weight(query.k)), set.eps_tot};
    valid[i] = 1;
  });

  std::size_t best = spots.size();
  for (std::size_t i = 0; i < spots.size(); ++i) {
    if (valid[i] && (best == spots.size() || scored[i].weight > scored[best].weight)) best = i;
  }
  if (best == spots.size()) throw EmptyAtlas("maximize_weight: no spot admits a positive f_m");
  return scored[best];
}

}  // namespace fluxsweet
