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

#include "fluxsweet/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fluxsweet/bessel.hpp"
#include "fluxsweet/errors.hpp"

namespace fluxsweet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos(x + q pi / 2) and its x-derivative without rounding the quarter turns.
double cos_quarter(double x, int q) {
  switch (((q % 4) + 4) % 4) {
    case 0: return std::cos(x);
    case 1: return -std::sin(x);
    case 2: return -std::cos(x);
    default: return std::sin(x);
  }
}

// d/dx cos(x + q pi/2) = cos(x + (q + 1) pi/2).
double dcos_quarter(double x, int q) { return cos_quarter(x, q + 1); }

struct SeriesRows {
  std::vector<BesselRow> fundamental;  // J(n phi_ac cos alpha)
  std::vector<BesselRow> harmonic;     // J(n phi_ac sin alpha)
};

SeriesRows make_rows(std::size_t n_terms, double a, double b, int min_a, int min_b) {
  SeriesRows rows;
  rows.fundamental.reserve(n_terms);
  rows.harmonic.reserve(n_terms);
  for (std::size_t n = 0; n < n_terms; ++n) {
    rows.fundamental.emplace_back(static_cast<double>(n) * a, min_a);
    rows.harmonic.emplace_back(static_cast<double>(n) * b, min_b);
  }
  return rows;
}

}  // namespace

void PulseParams::validate() const {
  if (!(phi_ac >= 0.0)) throw InvalidArgument("PulseParams: phi_ac must be >= 0");
  if (p < 1) throw InvalidArgument("PulseParams: p must be >= 1");
  if (!(f_m > 0.0)) throw InvalidArgument("PulseParams: f_m must be > 0");
  if (!std::isfinite(phi_dc) || !std::isfinite(alpha) || !std::isfinite(theta1) ||
      !std::isfinite(thetap)) {
    throw InvalidArgument("PulseParams: non-finite parameter");
  }
}

double drive_shape(const PulseParams& pulse, double t) {
  const double w = kTwoPi * pulse.f_m * t;
  return std::cos(pulse.alpha) * std::cos(w + pulse.theta1) +
         std::sin(pulse.alpha) * std::cos(pulse.p * w + pulse.thetap);
}

double flux_signal(const PulseParams& pulse, double t) {
  return pulse.phi_dc + pulse.phi_ac * drive_shape(pulse, t);
}

double ACSpectrum::nu(int k, int l) const {
  if (k < 1 || k > k_max || l < -l_max || l > l_max) return 0.0;
  return nu_table[static_cast<std::size_t>(k - 1) * (2 * l_max + 1) + (l + l_max)];
}

double ACSpectrum::evaluate(double t) const {
  double f = f_bar;
  for (std::size_t k = 0; k < harmonics.size(); ++k) {
    const auto& h = harmonics[k];
    f += h.amplitude * std::cos(kTwoPi * static_cast<double>(k + 1) * f_m * t + h.phase);
  }
  return f;
}

FbarJet fbar_jet(const BandSpectrum& band, double phi_dc, double phi_ac, double alpha, int p,
                 Transition transition) {
  if (p < 1) throw InvalidArgument("fbar_jet: p must be >= 1");
  const auto coeffs = band.coefficients(transition);
  const std::size_t n_terms = coeffs.size();
  const double phase_dc = kTwoPi * phi_dc;
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const double a = kTwoPi * phi_ac * ca;
  const double b = kTwoPi * phi_ac * sa;
  const double n_top = static_cast<double>(n_terms - 1);

  // Beyond this m both J_{pm}(n a) and J_m(n b) are negligible for every n.
  const int m_max = std::min(bessel_cutoff_order(n_top * b),
                             bessel_cutoff_order(n_top * a) / p) + 1;
  const SeriesRows rows = make_rows(n_terms, a, b, p * m_max + 1, m_max + 1);

  std::vector<double> value(m_max + 1, 0.0), d_dc(m_max + 1, 0.0), d_ac(m_max + 1, 0.0);
  for (int m = 0; m <= m_max; ++m) {
    const int q = (p + 1) * m;
    double v = 0.0, gd = 0.0, ga = 0.0;
    for (std::size_t n = 0; n < n_terms; ++n) {
      const double nn = static_cast<double>(n);
      const BesselRow& ja = rows.fundamental[n];
      const BesselRow& jb = rows.harmonic[n];
      const double c = cos_quarter(nn * phase_dc, q);
      const double jj = ja(p * m) * jb(m);
      v += coeffs[n] * c * jj;
      gd += coeffs[n] * nn * dcos_quarter(nn * phase_dc, q) * jj;
      ga += coeffs[n] * nn * c * (ca * ja.derivative(p * m) * jb(m) + sa * ja(p * m) * jb.derivative(m));
    }
    const double w = m == 0 ? 1.0 : 2.0;
    value[m] = w * v;
    d_dc[m] = w * kTwoPi * gd;
    d_ac[m] = w * kTwoPi * ga;
  }
  return {ChebyshevSeries(std::move(value)), ChebyshevSeries(std::move(d_dc)),
          ChebyshevSeries(std::move(d_ac))};
}

ChebyshevSeries chebyshev_poly(const BandSpectrum& band, double phi_dc, double phi_ac,
                               double alpha, int p, Transition transition) {
  if (p < 1) throw InvalidArgument("chebyshev_poly: p must be >= 1");
  const auto coeffs = band.coefficients(transition);
  const std::size_t n_terms = coeffs.size();
  const double phase_dc = kTwoPi * phi_dc;
  const double a = kTwoPi * phi_ac * std::cos(alpha);
  const double b = kTwoPi * phi_ac * std::sin(alpha);
  const double n_top = static_cast<double>(n_terms - 1);
  const int m_max = std::min(bessel_cutoff_order(n_top * b),
                             bessel_cutoff_order(n_top * a) / p) + 1;
  const SeriesRows rows = make_rows(n_terms, a, b, p * m_max, m_max);

  std::vector<double> value(m_max + 1, 0.0);
  for (int m = 0; m <= m_max; ++m) {
    double v = 0.0;
    for (std::size_t n = 0; n < n_terms; ++n) {
      v += coeffs[n] * cos_quarter(static_cast<double>(n) * phase_dc, (p + 1) * m) *
           rows.fundamental[n](p * m) * rows.harmonic[n](m);
    }
    value[m] = (m == 0 ? 1.0 : 2.0) * v;
  }
  return ChebyshevSeries(std::move(value));
}

double time_average_frequency(const BandSpectrum& band, const PulseParams& pulse,
                              Transition transition) {
  const ChebyshevSeries poly =
      chebyshev_poly(band, pulse.phi_dc, pulse.phi_ac, pulse.alpha, pulse.p, transition);
  return poly(std::cos(pulse.relative_phase()));
}

ACSpectrum ac_spectrum(const BandSpectrum& band, const PulseParams& pulse, Transition transition,
                       const SpectrumOptions& options) {
  pulse.validate();
  if (options.k_max < 1 || options.l_max < 0) {
    throw InvalidArgument("ac_spectrum: cutoffs must be positive");
  }
  const auto coeffs = band.coefficients(transition);
  const std::size_t n_terms = coeffs.size();
  const int p = pulse.p;
  const double phase_dc = kTwoPi * pulse.phi_dc;
  const double a = kTwoPi * pulse.phi_ac * std::cos(pulse.alpha);
  const double b = kTwoPi * pulse.phi_ac * std::sin(pulse.alpha);
  const double theta = pulse.relative_phase();

  ACSpectrum out;
  out.f_m = pulse.f_m;
  out.f_bar = time_average_frequency(band, pulse, transition);

  int k_max = options.k_max;
  int l_max = options.l_max;
  while (true) {
    const int width = 2 * l_max + 1;
    const SeriesRows rows = make_rows(n_terms, a, b, p * l_max + k_max + 1, l_max + 1);
    std::vector<double> table(static_cast<std::size_t>(k_max) * width, 0.0);
    for (int k = 1; k <= k_max; ++k) {
      for (int l = -l_max; l <= l_max; ++l) {
        double acc = 0.0;
        // n = 0 never contributes: J_{pl-k}(0) J_l(0) vanishes for k >= 1.
        for (std::size_t n = 1; n < n_terms; ++n) {
          const double jj = rows.fundamental[n](p * l - k) * rows.harmonic[n](l);
          if (jj == 0.0) continue;
          acc += coeffs[n] * cos_quarter(static_cast<double>(n) * phase_dc, (p + 1) * l - k) * jj;
        }
        table[static_cast<std::size_t>(k - 1) * width + (l + l_max)] = 2.0 * acc;
      }
    }

    double edge = 0.0;
    for (int l = -l_max; l <= l_max; ++l) {
      edge = std::max(edge, std::abs(table[static_cast<std::size_t>(k_max - 1) * width + (l + l_max)]));
    }
    for (int k = 1; k <= k_max; ++k) {
      const std::size_t row = static_cast<std::size_t>(k - 1) * width;
      edge = std::max({edge, std::abs(table[row]), std::abs(table[row + 2 * l_max])});
    }

    if (edge <= options.drop_tolerance || 2 * k_max > options.max_k) {
      out.k_max = k_max;
      out.l_max = l_max;
      out.nu_table = std::move(table);
      out.max_dropped = edge;
      out.truncation_warning = edge > options.drop_tolerance;
      break;
    }
    k_max *= 2;
    l_max *= 2;
  }

  out.harmonics.resize(out.k_max);
  for (int k = 1; k <= out.k_max; ++k) {
    std::complex<double> z = 0.0;
    for (int l = -out.l_max; l <= out.l_max; ++l) {
      const double v = out.nu(k, l);
      if (v != 0.0) z += v * std::polar(1.0, l * theta);
    }
    z *= std::polar(1.0, k * pulse.theta1);
    out.harmonics[k - 1].amplitude = std::abs(z);
    out.harmonics[k - 1].phase = std::abs(z) == 0.0 ? 0.0 : std::arg(z);
  }
  return out;
}

}  // namespace fluxsweet
