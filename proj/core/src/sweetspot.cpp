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

#include "fluxsweet/sweetspot.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fluxsweet/errors.hpp"
#include "fluxsweet/parallel.hpp"

namespace fluxsweet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286061;

struct AlphaSlice {
  double alpha = 0.0;
  ChebyshevSeries d_dc;
  ChebyshevSeries d_ac;
  std::vector<double> roots_dc;
  std::vector<double> roots_ac;
  bool degenerate = false;
};

struct SliceContext {
  const BandSpectrum& band;
  double phi_dc;
  double phi_ac;
  int p;
  const SearchOptions& options;

  AlphaSlice at(double alpha) const {
    AlphaSlice s;
    s.alpha = alpha;
    FbarJet jet = fbar_jet(band, phi_dc, phi_ac, alpha, p);
    s.d_dc = jet.d_dc.trimmed(1e-15);
    s.d_ac = jet.d_ac.trimmed(1e-15);
    s.degenerate = s.d_dc.is_zero(options.degenerate_tol);
    if (!s.degenerate) s.roots_dc = s.d_dc.roots_in_unit_interval();
    s.roots_ac = s.d_ac.roots_in_unit_interval();
    return s;
  }
};

// Index pairing for equal counts; otherwise mutual nearest neighbours.
std::vector<std::pair<double, double>> pair_branches(const std::vector<double>& left,
                                                     const std::vector<double>& right) {
  std::vector<std::pair<double, double>> out;
  if (left.size() == right.size()) {
    for (std::size_t i = 0; i < left.size(); ++i) out.emplace_back(left[i], right[i]);
    return out;
  }
  auto nearest = [](double x, const std::vector<double>& set) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < set.size(); ++j) {
      if (std::abs(set[j] - x) < std::abs(set[best] - x)) best = j;
    }
    return best;
  };
  if (left.empty() || right.empty()) return out;
  for (std::size_t i = 0; i < left.size(); ++i) {
    const std::size_t j = nearest(left[i], right);
    if (nearest(right[j], left) == i && std::abs(right[j] - left[i]) < 0.25) {
      out.emplace_back(left[i], right[j]);
    }
  }
  return out;
}

void scan_interval(const SliceContext& ctx, const AlphaSlice& lo, const AlphaSlice& hi, int depth,
                   std::vector<std::pair<double, double>>& seeds) {
  if (lo.degenerate || hi.degenerate) return;
  const bool same = lo.roots_dc.size() == hi.roots_dc.size() &&
                    lo.roots_ac.size() == hi.roots_ac.size();
  if (!same && depth < ctx.options.max_refine_depth) {
    const AlphaSlice mid = ctx.at(0.5 * (lo.alpha + hi.alpha));
    scan_interval(ctx, lo, mid, depth + 1, seeds);
    scan_interval(ctx, mid, hi, depth + 1, seeds);
    return;
  }
  const double alpha_mid = 0.5 * (lo.alpha + hi.alpha);
  for (const auto& [xl, xr] : pair_branches(lo.roots_dc, hi.roots_dc)) {
    if (lo.d_ac(xl) * hi.d_ac(xr) <= 0.0) seeds.emplace_back(alpha_mid, 0.5 * (xl + xr));
  }
  for (const auto& [xl, xr] : pair_branches(lo.roots_ac, hi.roots_ac)) {
    if (lo.d_dc(xl) * hi.d_dc(xr) <= 0.0) seeds.emplace_back(alpha_mid, 0.5 * (xl + xr));
  }
}

// Newton on (D, A) = 0 in (alpha, x); alpha derivatives by central differences.
bool polish_intersection(const SliceContext& ctx, double& alpha, double& x) {
  constexpr double h = 1e-6;
  double best = std::numeric_limits<double>::infinity();
  int settled = 0;
  for (int it = 0; it < 60; ++it) {
    const FbarJet jet = fbar_jet(ctx.band, ctx.phi_dc, ctx.phi_ac, alpha, ctx.p);
    const double d = jet.d_dc(x);
    const double a = jet.d_ac(x);
    const double res = std::max(std::abs(d), std::abs(a));
    if (res < ctx.options.grad_tol) {
      // Keep iterating while the residual still improves, then stop.
      if (res >= 0.5 * best || ++settled > 3) return true;
    }
    best = std::min(best, res);

    const double a_lo = std::max(0.0, alpha - h);
    const double a_hi = std::min(kHalfPi, alpha + h);
    const FbarJet jl = fbar_jet(ctx.band, ctx.phi_dc, ctx.phi_ac, a_lo, ctx.p);
    const FbarJet jh = fbar_jet(ctx.band, ctx.phi_dc, ctx.phi_ac, a_hi, ctx.p);
    const double span = a_hi - a_lo;
    const double d_alpha = (jh.d_dc(x) - jl.d_dc(x)) / span;
    const double a_alpha = (jh.d_ac(x) - jl.d_ac(x)) / span;
    const double d_x = jet.d_dc.derivative()(x);
    const double a_x = jet.d_ac.derivative()(x);
    const double det = d_alpha * a_x - d_x * a_alpha;
    if (det == 0.0 || !std::isfinite(det)) return false;
    double step_alpha = (a_x * d - d_x * a) / det;
    double step_x = (-a_alpha * d + d_alpha * a) / det;
    const double scale = std::max({1.0, std::abs(step_alpha) / 0.1, std::abs(step_x) / 0.2});
    step_alpha /= scale;
    step_x /= scale;
    alpha -= step_alpha;
    x -= step_x;
    if (alpha < -1e-9 || alpha > kHalfPi + 1e-9 || x < -1.0 - 1e-9 || x > 1.0 + 1e-9) return false;
    alpha = std::clamp(alpha, 0.0, kHalfPi);
    x = std::clamp(x, -1.0, 1.0);
  }
  const FbarJet jet = fbar_jet(ctx.band, ctx.phi_dc, ctx.phi_ac, alpha, ctx.p);
  return std::max(std::abs(jet.d_dc(x)), std::abs(jet.d_ac(x))) < ctx.options.grad_tol;
}

void append_unique(std::vector<SweetSpot>& spots, const SweetSpot& s, double tol) {
  for (const auto& t : spots) {
    if (std::abs(t.pulse.phi_dc - s.pulse.phi_dc) < tol &&
        std::abs(t.pulse.phi_ac - s.pulse.phi_ac) < tol &&
        std::abs(t.pulse.alpha - s.pulse.alpha) < tol &&
        std::abs(std::cos(t.pulse.thetap) - std::cos(s.pulse.thetap)) < tol) {
      return;
    }
  }
  spots.push_back(s);
}

}  // namespace

void NoiseStrengths::validate() const {
  if (!(a_dc >= 0.0) || !(a_ac >= 0.0)) {
    throw InvalidArgument("NoiseStrengths: amplitudes must be >= 0");
  }
  if (!(t_ir >= 0.0)) throw InvalidArgument("NoiseStrengths: t_ir must be >= 0");
}

Gradient fbar_gradient(const BandSpectrum& band, const PulseParams& pulse, Transition transition) {
  const FbarJet jet = fbar_jet(band, pulse.phi_dc, pulse.phi_ac, pulse.alpha, pulse.p, transition);
  const double x = std::cos(pulse.relative_phase());
  return {jet.d_dc(x), jet.d_ac(x)};
}

double lambda_squared(double t_phi, double t_ir) {
  return 1.5 - kEulerGamma - std::log(2.0 * kPi * t_phi / t_ir);
}

DephasingRate dephasing_rate(const BandSpectrum& band, const PulseParams& pulse,
                             const NoiseStrengths& noise, double t_phi_guess) {
  noise.validate();
  if (!(noise.t_ir > 0.0)) throw InvalidArgument("dephasing_rate: t_ir must be > 0");
  if (!(t_phi_guess > 0.0)) throw InvalidArgument("dephasing_rate: T_phi guess must be > 0");

  const Gradient grad = fbar_gradient(band, pulse);
  const double sensitivity =
      std::hypot(noise.a_dc * grad.d_dc, noise.a_ac * grad.d_ac);

  DephasingRate out;
  if (sensitivity == 0.0) {
    const double l2 = lambda_squared(t_phi_guess, noise.t_ir);
    out.lambda = l2 > 0.0 ? std::sqrt(l2) : 0.0;
    out.lambda_undefined = l2 < 0.0;
    out.t_phi = std::numeric_limits<double>::infinity();
    out.converged = true;
    return out;
  }

  double t_phi = t_phi_guess;
  for (int it = 1; it <= 20; ++it) {
    out.iterations = it;
    const double l2 = lambda_squared(t_phi, noise.t_ir);
    if (l2 < 0.0) {
      out.lambda_undefined = true;
      out.rate = 0.0;
      out.lambda = 0.0;
      out.t_phi = t_phi;
      return out;
    }
    out.lambda = std::sqrt(l2);
    out.rate = 2.0 * kPi * out.lambda * sensitivity;
    const double next = 1.0 / out.rate;
    const bool done = std::abs(next - t_phi) <= 1e-12 * t_phi;
    t_phi = next;
    if (done) {
      out.converged = true;
      break;
    }
  }
  out.t_phi = t_phi;
  return out;
}

SweetSpot make_sweet_spot(const BandSpectrum& band, double phi_dc, double phi_ac, double alpha,
                          double theta, int p, double f_m) {
  SweetSpot s;
  s.pulse.phi_dc = phi_dc;
  s.pulse.phi_ac = phi_ac;
  s.pulse.alpha = alpha;
  s.pulse.theta1 = 0.0;
  s.pulse.thetap = theta;
  s.pulse.p = p;
  s.pulse.f_m = f_m;
  const double x = std::cos(theta);
  const FbarJet jet = fbar_jet(band, phi_dc, phi_ac, alpha, p);
  s.f_bar01 = jet.value(x);
  s.grad_dc = jet.d_dc(x);
  s.grad_ac = jet.d_ac(x);
  s.f_bar12 = chebyshev_poly(band, phi_dc, phi_ac, alpha, p, Transition::k12)(x);
  return s;
}

std::vector<SweetSpot> find_sweet_spots(const BandSpectrum& band, double phi_dc, double phi_ac,
                                        int p, const SearchOptions& options) {
  if (p < 1) throw InvalidArgument("find_sweet_spots: p must be >= 1");
  if (options.alpha_grid < 2) throw InvalidArgument("find_sweet_spots: alpha_grid must be >= 2");
  std::vector<SweetSpot> spots;
  if (!(phi_ac > 0.0)) return spots;

  const SliceContext ctx{band, phi_dc, phi_ac, p, options};
  std::vector<AlphaSlice> slices;
  slices.reserve(options.alpha_grid);
  for (int j = 0; j < options.alpha_grid; ++j) {
    slices.push_back(ctx.at(kHalfPi * j / (options.alpha_grid - 1)));
  }

  // Degenerate slices: every x is a DC root, so the AC roots are sweet spots.
  for (const auto& s : slices) {
    if (!s.degenerate) continue;
    for (double x : s.roots_ac) {
      append_unique(spots, make_sweet_spot(band, phi_dc, phi_ac, s.alpha, std::acos(x), p), 1e-9);
    }
  }

  std::vector<std::pair<double, double>> seeds;
  for (std::size_t j = 0; j + 1 < slices.size(); ++j) {
    scan_interval(ctx, slices[j], slices[j + 1], 0, seeds);
  }
  for (auto [alpha, x] : seeds) {
    if (!polish_intersection(ctx, alpha, x)) continue;
    append_unique(spots, make_sweet_spot(band, phi_dc, phi_ac, alpha, std::acos(x), p), 1e-7);
  }
  return spots;
}

std::vector<SweetSpot> find_monochromatic_sweet_spots(const BandSpectrum& band, double phi_ac_max,
                                                      double grid_step) {
  if (!(phi_ac_max > 0.0) || !(grid_step > 0.0)) {
    throw InvalidArgument("find_monochromatic_sweet_spots: bounds must be positive");
  }
  auto grad = [&](double dc, double ac) {
    const FbarJet jet = fbar_jet(band, dc, ac, 0.0, 1);
    return std::pair{jet.d_dc(1.0), jet.d_ac(1.0)};
  };

  // Half-step offset keeps nodes off the symmetry lines phi_dc = 0 and 1/2.
  const int n_dc = static_cast<int>(std::round(0.6 / grid_step));
  const int n_ac = static_cast<int>(std::ceil(phi_ac_max / grid_step));
  auto dc_at = [&](int i) { return -0.05 + (i + 0.5) * grid_step; };
  auto ac_at = [&](int j) { return (j + 0.5) * grid_step; };
  std::vector<std::pair<double, double>> g(static_cast<std::size_t>(n_dc) * n_ac);
  for (int i = 0; i < n_dc; ++i) {
    for (int j = 0; j < n_ac; ++j) g[i * n_ac + j] = grad(dc_at(i), ac_at(j));
  }

  auto changes = [](double a, double b, double c, double d) {
    const double lo = std::min({a, b, c, d});
    const double hi = std::max({a, b, c, d});
    return lo <= 0.0 && hi >= 0.0;
  };

  std::vector<SweetSpot> spots;
  for (int i = 0; i + 1 < n_dc; ++i) {
    for (int j = 0; j + 1 < n_ac; ++j) {
      const auto& g00 = g[i * n_ac + j];
      const auto& g10 = g[(i + 1) * n_ac + j];
      const auto& g01 = g[i * n_ac + j + 1];
      const auto& g11 = g[(i + 1) * n_ac + j + 1];
      if (!changes(g00.first, g10.first, g01.first, g11.first)) continue;
      if (!changes(g00.second, g10.second, g01.second, g11.second)) continue;

      double dc = 0.5 * (dc_at(i) + dc_at(i + 1));
      double ac = 0.5 * (ac_at(j) + ac_at(j + 1));
      bool ok = false;
      for (int it = 0; it < 50; ++it) {
        const auto [d, a] = grad(dc, ac);
        if (std::max(std::abs(d), std::abs(a)) < 1e-11) {
          ok = true;
          break;
        }
        constexpr double h = 1e-6;
        const auto gp = grad(dc + h, ac);
        const auto gm = grad(dc - h, ac);
        const auto hp = grad(dc, ac + h);
        const auto hm = grad(dc, ac - h);
        const double j00 = (gp.first - gm.first) / (2 * h);
        const double j10 = (gp.second - gm.second) / (2 * h);
        const double j01 = (hp.first - hm.first) / (2 * h);
        const double j11 = (hp.second - hm.second) / (2 * h);
        const double det = j00 * j11 - j01 * j10;
        if (det == 0.0 || !std::isfinite(det)) break;
        double sd = (j11 * d - j01 * a) / det;
        double sa = (-j10 * d + j00 * a) / det;
        const double scale = std::max({1.0, std::abs(sd) / 0.02, std::abs(sa) / 0.02});
        dc -= sd / scale;
        ac -= sa / scale;
        if (std::abs(sd) + std::abs(sa) < 1e-15) {
          const auto [d2, a2] = grad(dc, ac);
          ok = std::max(std::abs(d2), std::abs(a2)) < 1e-9;
          break;
        }
      }
      if (!ok || !(ac > 1e-4) || ac > phi_ac_max + grid_step) continue;
      dc -= std::floor(dc);
      if (dc > 0.5) dc = 1.0 - dc;
      if (dc < 1e-12) dc = 0.0;
      if (std::abs(dc - 0.5) < 1e-12) dc = 0.5;
      append_unique(spots, make_sweet_spot(band, dc, ac, 0.0, 0.0, 1), 1e-7);
    }
  }
  std::sort(spots.begin(), spots.end(), [](const SweetSpot& a, const SweetSpot& b) {
    return std::pair(a.pulse.phi_dc, a.pulse.phi_ac) < std::pair(b.pulse.phi_dc, b.pulse.phi_ac);
  });
  return spots;
}

double coverage_fraction(const BandSpectrum& band, const std::vector<SweetSpot>& spots,
                         int bins) {
  if (bins < 1) throw InvalidArgument("coverage_fraction: bins must be >= 1");
  const double lo = band.f_min();
  const double hi = band.f_max();
  std::vector<char> hit(bins, 0);
  for (const auto& s : spots) {
    const double u = (s.f_bar01 - lo) / (hi - lo);
    if (u < 0.0 || u > 1.0) continue;
    hit[std::min(bins - 1, static_cast<int>(u * bins))] = 1;
  }
  return static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / bins;
}

Atlas sweep_continuum(const BandSpectrum& band, int p, const std::vector<double>& dc_grid,
                      const std::vector<double>& ac_grid, const AtlasOptions& options) {
  Atlas atlas;
  atlas.p = p;
  const std::size_t n_cells = dc_grid.size() * ac_grid.size();
  if (n_cells == 0) return atlas;
  for (double dc : dc_grid) {
    if (dc < 0.0 || dc > 0.5) throw InvalidArgument("sweep_continuum: phi_dc outside [0, 1/2]");
  }
  for (double ac : ac_grid) {
    if (ac < 0.0 || ac > 1.0) throw InvalidArgument("sweep_continuum: phi_ac outside [0, 1]");
  }

  const int threads = resolve_thread_count(options.threads);
  const std::size_t batch = std::max<std::size_t>(16, 4 * static_cast<std::size_t>(threads));
  std::vector<std::vector<SweetSpot>> cells(n_cells);
  for (std::size_t start = 0; start < n_cells; start += batch) {
    const std::size_t stop = std::min(n_cells, start + batch);
    parallel_for(stop - start, threads, [&](std::size_t i) {
      const std::size_t c = start + i;
      cells[c] = find_sweet_spots(band, dc_grid[c / ac_grid.size()], ac_grid[c % ac_grid.size()],
                                  p, options.search);
    });
    for (std::size_t c = start; c < stop; ++c) {
      if (options.on_cell) options.on_cell(c, cells[c]);
      atlas.spots.insert(atlas.spots.end(), cells[c].begin(), cells[c].end());
      cells[c].clear();
      cells[c].shrink_to_fit();
    }
  }

  atlas.coverage = coverage_fraction(band, atlas.spots, options.coverage_bins);
  if (!atlas.spots.empty()) {
    const auto [lo, hi] = std::minmax_element(
        atlas.spots.begin(), atlas.spots.end(),
        [](const SweetSpot& a, const SweetSpot& b) { return a.f_bar01 < b.f_bar01; });
    atlas.f_bar_lo = lo->f_bar01;
    atlas.f_bar_hi = hi->f_bar01;
  }
  return atlas;
}

std::optional<SweetSpot> tune_sweet_spot(const BandSpectrum& band, const SweetSpot& seed,
                                         Transition transition, double target, double grad_tol) {
  const int p = seed.pulse.p;
  const double alpha = seed.pulse.alpha;
  Eigen::Vector3d v(seed.pulse.phi_dc, seed.pulse.phi_ac, std::cos(seed.pulse.thetap));

  auto residual = [&](const Eigen::Vector3d& u, Eigen::Vector3d* dx) {
    const FbarJet jet = fbar_jet(band, u[0], u[1], alpha, p);
    const ChebyshevSeries f = transition == Transition::k01
                                  ? jet.value
                                  : chebyshev_poly(band, u[0], u[1], alpha, p, Transition::k12);
    if (dx) {
      *dx = Eigen::Vector3d(jet.d_dc.derivative()(u[2]), jet.d_ac.derivative()(u[2]),
                            f.derivative()(u[2]));
    }
    return Eigen::Vector3d(jet.d_dc(u[2]), jet.d_ac(u[2]), f(u[2]) - target);
  };

  constexpr double h = 1e-6;
  for (int it = 0; it < 40; ++it) {
    Eigen::Vector3d col_x;
    const Eigen::Vector3d r = residual(v, &col_x);
    if (std::abs(r[0]) < grad_tol && std::abs(r[1]) < grad_tol && std::abs(r[2]) < 1e-10) {
      if (v[1] <= 0.0) return std::nullopt;
      return make_sweet_spot(band, v[0], v[1], alpha, std::acos(v[2]), p, seed.pulse.f_m);
    }
    Eigen::Matrix3d jac;
    for (int c = 0; c < 2; ++c) {
      Eigen::Vector3d up = v, dn = v;
      up[c] += h;
      dn[c] -= h;
      jac.col(c) = (residual(up, nullptr) - residual(dn, nullptr)) / (2 * h);
    }
    jac.col(2) = col_x;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
    if (!lu.isInvertible()) return std::nullopt;
    Eigen::Vector3d step = lu.solve(r);
    const double scale =
        std::max({1.0, std::abs(step[0]) / 0.02, std::abs(step[1]) / 0.02, std::abs(step[2]) / 0.1});
    v -= step / scale;
    if (v[2] < -1.0 - 1e-9 || v[2] > 1.0 + 1e-9 || v[1] <= 0.0) return std::nullopt;
    v[2] = std::clamp(v[2], -1.0, 1.0);
  }
  return std::nullopt;
}

}  // namespace fluxsweet
