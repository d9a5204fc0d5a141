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

#include "fluxsweet/band.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fluxsweet/errors.hpp"

namespace fluxsweet {

namespace {

constexpr double kPi = std::numbers::pi;

double xi_of(double e_j, double e_c) { return std::sqrt(2.0 * e_c / e_j); }

// Solves f01(E_J, E_C) = f_max and eta(E_J, E_C) = eta_max for (E_C, E_J).
std::pair<double, double> solve_charging_and_josephson(double f_max, double eta_max) {
  double e_c = eta_max;
  double e_j = (f_max + eta_max) * (f_max + eta_max) / (8.0 * eta_max);
  for (int it = 0; it < 100; ++it) {
    const double r0 = transmon_f01(e_j, e_c) - f_max;
    const double r1 = transmon_anharmonicity(e_j, e_c) - eta_max;
    if (std::abs(r0) < 1e-14 && std::abs(r1) < 1e-15) return {e_c, e_j};

    const double hc = 1e-7 * e_c;
    const double hj = 1e-7 * e_j;
    const double a00 = (transmon_f01(e_j, e_c + hc) - transmon_f01(e_j, e_c - hc)) / (2 * hc);
    const double a01 = (transmon_f01(e_j + hj, e_c) - transmon_f01(e_j - hj, e_c)) / (2 * hj);
    const double a10 =
        (transmon_anharmonicity(e_j, e_c + hc) - transmon_anharmonicity(e_j, e_c - hc)) / (2 * hc);
    const double a11 =
        (transmon_anharmonicity(e_j + hj, e_c) - transmon_anharmonicity(e_j - hj, e_c)) / (2 * hj);
    const double det = a00 * a11 - a01 * a10;
    if (det == 0.0 || !std::isfinite(det)) break;
    double dc = (a11 * r0 - a01 * r1) / det;
    double dj = (-a10 * r0 + a00 * r1) / det;
    // Damp steps that would leave the physical quadrant.
    double damp = 1.0;
    while ((e_c - damp * dc <= 0.0 || e_j - damp * dj <= 0.0) && damp > 1e-6) damp *= 0.5;
    e_c -= damp * dc;
    e_j -= damp * dj;
    if (!std::isfinite(e_c) || !std::isfinite(e_j)) break;
  }
  const double r0 = transmon_f01(e_j, e_c) - f_max;
  const double r1 = transmon_anharmonicity(e_j, e_c) - eta_max;
  if (std::abs(r0) < 1e-11 && std::abs(r1) < 1e-11 && e_c > 0 && e_j > 0) return {e_c, e_j};
  throw NoConvergence("calibrate: (E_C, E_J) inversion did not converge");
}

std::vector<double> cosine_projection(const std::vector<double>& samples, int order) {
  const int n_grid = static_cast<int>(samples.size());
  std::vector<double> coeffs(static_cast<std::size_t>(order) + 1, 0.0);
  for (int n = 0; n <= order; ++n) {
    double acc = 0.0;
    for (int j = 0; j < n_grid; ++j) {
      // n*j reduced mod n_grid keeps the cosine argument small and exact.
      const long long idx = (static_cast<long long>(n) * j) % n_grid;
      acc += samples[j] * std::cos(2.0 * kPi * static_cast<double>(idx) / n_grid);
    }
    coeffs[n] = (n == 0 ? 1.0 : 2.0) * acc / n_grid;
  }
  return coeffs;
}

double clenshaw_cosine(std::span<const double> c, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  const double two_x = 2.0 * x;
  for (std::size_t m = c.size() - 1; m >= 1; --m) {
    const double b0 = c[m] + two_x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

}  // namespace

void DeviceSpec::validate() const {
  std::ostringstream why;
  if (!(f_min > 0.0)) why << "f_min must be positive; ";
  if (!(f_max > f_min)) why << "f_max must exceed f_min; ";
  if (!(eta_max > 0.0)) why << "eta_max must be positive; ";
  if (!(g >= 0.0)) why << "g must be non-negative; ";
  if (!(f_F01 > 0.0) || !(f_F12 > 0.0)) why << "fixed-transmon frequencies must be positive; ";
  const std::string msg = why.str();
  if (!msg.empty()) throw InvalidArgument("DeviceSpec: " + msg.substr(0, msg.size() - 2));
}

const char* to_string(Transition t) { return t == Transition::k01 ? "01" : "12"; }

double SquidTransmon::josephson_energy(double phi_ext) const {
  const double v = e_j1 * e_j1 + e_j2 * e_j2 + 2.0 * e_j1 * e_j2 * std::cos(phi_ext);
  return std::sqrt(std::max(v, 0.0));
}

double SquidTransmon::xi(double phi_ext) const {
  return xi_of(josephson_energy(phi_ext), e_c);
}

double transmon_f01(double e_j, double e_c) {
  const double x = xi_of(e_j, e_c);
  const double corr =
      1.0 + x * (1.0 / 4.0 + x * (21.0 / 128.0 + x * (19.0 / 128.0 + x * (5319.0 / 32768.0))));
  return std::sqrt(8.0 * e_j * e_c) - e_c * corr;
}

double transmon_anharmonicity(double e_j, double e_c) {
  const double x = xi_of(e_j, e_c);
  const double corr =
      1.0 + x * (9.0 / 16.0 + x * (81.0 / 128.0 + x * (3645.0 / 4096.0 + x * (46899.0 / 32768.0))));
  return e_c * corr;
}

double zeta01(double xi) {
  const double s = 1.0 -
                   xi * (1.0 / 8.0 +
                         xi * (11.0 / 256.0 +
                               xi * (65.0 / 2048.0 +
                                     xi * (4203.0 / 131072.0 +
                                           xi * (40721.0 / 1048576.0 +
                                                 xi * (1784885.0 / 33554432.0))))));
  return s / std::sqrt(xi);
}

double zeta12(double xi) {
  const double s = 1.0 -
                   xi * (1.0 / 4.0 +
                         xi * (73.0 / 512.0 +
                               xi * (79.0 / 512.0 +
                                     xi * (113685.0 / 524288.0 +
                                           xi * (747533.0 / 2097152.0 +
                                                 xi * (175422349.0 / 268435456.0))))));
  return s / std::sqrt(xi);
}

BandSpectrum BandSpectrum::calibrate(const DeviceSpec& spec, double trunc_tol, int grid_size) {
  spec.validate();
  if (!(trunc_tol > 0.0 && trunc_tol < 1e-3)) {
    throw InvalidArgument("calibrate: trunc_tol must lie in (0, 1e-3)");
  }
  const auto [e_c, e_j_sum] = solve_charging_and_josephson(spec.f_max, spec.eta_max);
  if (xi_of(e_j_sum, e_c) > kMaxXi) {
    throw NonTransmon("calibrate: xi at the band maximum exceeds 0.5");
  }

  // f01 increases monotonically with E_J in the transmon regime; bracket the
  // half-flux Josephson energy between xi = kMaxXi and the zero-flux value.
  const double e_j_floor = 2.0 * e_c / (kMaxXi * kMaxXi);
  if (transmon_f01(e_j_floor, e_c) > spec.f_min) {
    throw NonTransmon("calibrate: f_min requires xi(Phi0/2) > 0.5");
  }
  double lo = e_j_floor;
  double hi = e_j_sum;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (transmon_f01(mid, e_c) < spec.f_min ? lo : hi) = mid;
  }
  const double e_j_diff = 0.5 * (lo + hi);
  if (std::abs(transmon_f01(e_j_diff, e_c) - spec.f_min) > 1e-10) {
    throw NoConvergence("calibrate: half-flux Josephson energy did not converge");
  }

  SquidTransmon t;
  t.e_c = e_c;
  t.e_j1 = 0.5 * (e_j_sum + e_j_diff);
  t.e_j2 = 0.5 * (e_j_sum - e_j_diff);
  return from_transmon(t, trunc_tol, grid_size);
}

BandSpectrum BandSpectrum::from_transmon(const SquidTransmon& transmon, double trunc_tol,
                                         int grid_size) {
  if (!(transmon.e_c > 0.0 && transmon.e_j1 > 0.0 && transmon.e_j2 >= 0.0)) {
    throw InvalidArgument("from_transmon: energies must be positive");
  }
  if (grid_size < 64) throw InvalidArgument("from_transmon: grid_size must be >= 64");
  const double xi_worst = transmon.xi(kPi);
  if (!(xi_worst <= kMaxXi)) {
    throw NonTransmon("from_transmon: xi(Phi0/2) exceeds 0.5");
  }

  BandSpectrum band;
  band.transmon_ = transmon;
  band.trunc_tol_ = trunc_tol;
  band.xi_ref_ = transmon.xi(0.0);
  band.zeta01_ref_ = zeta01(band.xi_ref_);
  band.zeta12_ref_ = zeta12(band.xi_ref_);

  std::vector<double> s01(grid_size), s12(grid_size);
  band.mu01_samples_.resize(grid_size);
  band.mu12_samples_.resize(grid_size);
  for (int j = 0; j < grid_size; ++j) {
    const double phi = 2.0 * kPi * j / grid_size;
    const double e_j = transmon.josephson_energy(phi);
    s01[j] = transmon_f01(e_j, transmon.e_c);
    s12[j] = s01[j] - transmon_anharmonicity(e_j, transmon.e_c);
    const double x = xi_of(e_j, transmon.e_c);
    band.mu01_samples_[j] = zeta01(x) / band.zeta01_ref_;
    band.mu12_samples_[j] = zeta12(x) / band.zeta12_ref_;
  }

  // Grow the order until the first coefficient below tolerance in both bands.
  const int cap = grid_size / 2 - 1;
  int order = 8;
  std::vector<double> c01, c12;
  while (true) {
    c01 = cosine_projection(s01, order);
    c12 = cosine_projection(s12, order);
    int last = -1;
    for (int n = 1; n <= order; ++n) {
      if (std::abs(c01[n]) < trunc_tol * std::abs(c01[0]) &&
          std::abs(c12[n]) < trunc_tol * std::abs(c12[0])) {
        last = n;
        break;
      }
    }
    if (last > 0) {
      c01.resize(last + 1);
      c12.resize(last + 1);
      break;
    }
    if (order >= cap) throw NoConvergence("from_transmon: band series does not decay");
    order = std::min(2 * order, cap);
  }
  band.f01_ = std::move(c01);
  band.f12_ = std::move(c12);
  return band;
}

double BandSpectrum::frequency(double phi_ext, Transition t) const {
  return clenshaw_cosine(coefficients(t), std::cos(phi_ext));
}

std::pair<double, double> BandSpectrum::frequencies(double phi_ext) const {
  const double x = std::cos(phi_ext);
  return {clenshaw_cosine(f01_, x), clenshaw_cosine(f12_, x)};
}

std::array<double, 4> BandSpectrum::frequency_jet(double phi_ext, Transition t) const {
  const auto c = coefficients(t);
  std::array<double, 4> out{};
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double nn = static_cast<double>(n);
    const double cs = std::cos(nn * phi_ext);
    const double sn = std::sin(nn * phi_ext);
    out[0] += c[n] * cs;
    out[1] -= c[n] * nn * sn;
    out[2] -= c[n] * nn * nn * cs;
    out[3] += c[n] * nn * nn * nn * sn;
  }
  return out;
}

double BandSpectrum::f_min() const { return frequency(kPi); }

CouplingFactors BandSpectrum::coupling_factors(double phi_ext) const {
  const double x = transmon_.xi(phi_ext);
  if (!(x <= kMaxXi)) throw SeriesDivergence("coupling_factors: xi exceeds 0.5");
  return {zeta01(x) / zeta01_ref_, zeta12(x) / zeta12_ref_};
}

}  // namespace fluxsweet
