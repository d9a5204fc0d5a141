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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "fluxsweet/dynamics.hpp"
#include "fluxsweet/errors.hpp"
#include "fluxsweet/parallel.hpp"
#include "fluxsweet/sideband.hpp"
#include "fluxsweet/sweetspot.hpp"
#include "fluxsweet/version.hpp"
#include "output.hpp"

namespace fluxsweet::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Check failures exit with status 1 rather than the library error status.
class CheckFailed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::string out = "-";
  std::string summary;
  Overrides ov;
};

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
  c.ov.apply(cfg);
  cfg.device.validate();
  return cfg;
}

void add_base(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config_path, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("-o,--out", c.out, "CSV output path ('-' for stdout)");
  app->add_option("--threads", c.ov.threads,
                  "Worker threads (default: FLUXSWEET_THREADS or hardware concurrency)");
  auto* g = "Device";
  app->add_option("--f-max", c.ov.f_max, "01 frequency at zero flux")->group(g);
  app->add_option("--f-min", c.ov.f_min, "01 frequency at half flux")->group(g);
  app->add_option("--eta-max", c.ov.eta_max, "anharmonicity at zero flux")->group(g);
  app->add_option("--g", c.ov.g, "coupling to the fixed transmon")->group(g);
  app->add_option("--f-fixed01", c.ov.f_F01, "fixed transmon 01 frequency")->group(g);
  app->add_option("--f-fixed12", c.ov.f_F12, "fixed transmon 12 frequency")->group(g);
  app->add_option("--trunc-tol", c.ov.trunc_tol, "band series truncation tolerance")->group(g);
}

void add_pulse(CLI::App* app, Common& c) {
  auto* g = "Pulse";
  app->add_option("--phi-dc", c.ov.phi_dc, "DC flux offset")->group(g);
  app->add_option("--phi-ac", c.ov.phi_ac, "AC flux amplitude")->group(g);
  app->add_option("--alpha", c.ov.alpha, "tone mixing angle (rad)")->group(g);
  app->add_option("--theta1", c.ov.theta1, "phase of the first tone (rad)")->group(g);
  app->add_option("--thetap", c.ov.thetap, "phase of the second tone (rad)")->group(g);
  app->add_option("--p", c.ov.p, "harmonic of the second tone")->group(g);
  app->add_option("--fm", c.ov.f_m, "modulation frequency (GHz)")->group(g);
}

void add_noise(CLI::App* app, Common& c) {
  auto* g = "Noise";
  app->add_option("--a-dc", c.ov.a_dc, "1/f amplitude on the DC offset (Phi0)")->group(g);
  app->add_option("--a-ac", c.ov.a_ac, "1/f amplitude on the AC amplitude (Phi0)")->group(g);
  app->add_option("--t-ir", c.ov.t_ir, "infrared cutoff time, 0 = duration (ns)")->group(g);
  app->add_option("--dt", c.ov.dt, "noise hold step (ns)")->group(g);
  app->add_option("--duration", c.ov.duration, "record duration (ns)")->group(g);
  app->add_option("--shots", c.ov.shots, "noise realizations")->group(g);
  app->add_option("--seed", c.ov.seed, "noise seed")->group(g);
  app->add_option("--summary", c.summary, "also write the JSON summary to this path");
}

std::vector<double> grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw InvalidArgument("grid: need step > 0 and max >= min");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
  return v;
}

Transition parse_transition(const std::string& s) {
  if (s == "01") return Transition::k01;
  if (s == "12") return Transition::k12;
  throw InvalidArgument("transition must be 01 or 12");
}

nlohmann::json pulse_json(const PulseParams& p) {
  return {{"phi_dc", p.phi_dc}, {"phi_ac", p.phi_ac}, {"alpha", p.alpha}, {"theta1", p.theta1},
          {"thetap", p.thetap}, {"p", p.p},           {"f_m", p.f_m}};
}

void finish_summary(const Common& c, CsvWriter& csv, const std::string& command,
                    const nlohmann::json& params, const nlohmann::json& results) {
  csv.comment("summary: " + results.dump());
  if (!c.summary.empty()) {
    OutputStream s(c.summary);
    write_summary(s.get(), command, params, results);
  }
}

// ---------------------------------------------------------------- band

struct BandArgs {
  int points = 201;
  std::string coeffs;
  bool check = false;
  int check_samples = 1000;
};

int cmd_band(const Common& c, const BandArgs& a) {
  RunConfig cfg = resolve(c);
  const BandSpectrum band = BandSpectrum::calibrate(cfg.device, cfg.trunc_tol);
  nlohmann::json params = cfg.echo();
  params["points"] = a.points;
  const SquidTransmon& tm = band.transmon();
  params["transmon"] = {{"e_c", tm.e_c}, {"e_j1", tm.e_j1}, {"e_j2", tm.e_j2}};
  params["truncation_order"] = band.truncation_order();

  OutputStream out(c.out);
  CsvWriter csv(out.get(), "band", params, {"phi", "f01", "f12", "mu01", "mu12"});
  if (a.points < 2) throw InvalidArgument("--points must be >= 2");
  for (int i = 0; i < a.points; ++i) {
    const double phi = static_cast<double>(i) / (a.points - 1);
    const auto [f01, f12] = band.frequencies(kTwoPi * phi);
    const CouplingFactors mu = band.coupling_factors(kTwoPi * phi);
    csv.row({phi, f01, f12, mu.mu01, mu.mu12});
  }

  if (!a.coeffs.empty()) {
    OutputStream cs(a.coeffs);
    CsvWriter ccsv(cs.get(), "band --coeffs", params, {"n", "F01_n", "F12_n"});
    const auto c01 = band.coefficients(Transition::k01);
    const auto c12 = band.coefficients(Transition::k12);
    for (std::size_t n = 0; n < c01.size(); ++n) {
      ccsv.row({static_cast<double>(n), c01[n], c12[n]});
    }
  }

  if (a.check) {
    // Series against the closed-form transmon bands at random flux points.
    std::mt19937_64 rng(cfg.noise.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < a.check_samples; ++i) {
      const double phi = kTwoPi * u(rng);
      const double e_j = tm.josephson_energy(phi);
      const double f01 = transmon_f01(e_j, tm.e_c);
      const double f12 = f01 - transmon_anharmonicity(e_j, tm.e_c);
      const auto [s01, s12] = band.frequencies(phi);
      worst = std::max({worst, std::abs(s01 - f01) / f01, std::abs(s12 - f12) / f12});
    }
    const bool ok = worst < cfg.trunc_tol;
    csv.comment("check: samples=" + std::to_string(a.check_samples) +
                " max_rel_error=" + format_number(worst) + " tol=" + format_number(cfg.trunc_tol) +
                (ok ? " pass" : " FAIL"));
    if (!ok) throw CheckFailed("band --check: reconstruction error " + format_number(worst) +
                               " exceeds " + format_number(cfg.trunc_tol));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- favg

struct FavgArgs {
  int theta_points = 0;
};

int cmd_favg(const Common& c, const FavgArgs& a) {
  RunConfig cfg = resolve(c);
  cfg.pulse.validate();
  const BandSpectrum band = BandSpectrum::calibrate(cfg.device, cfg.trunc_tol);
  nlohmann::json params = cfg.echo();
  params["theta_points"] = a.theta_points;
  OutputStream out(c.out);
  CsvWriter csv(out.get(), "favg", params, {"theta", "f_bar01", "f_bar12", "grad_dc", "grad_ac"});
  auto emit = [&](const PulseParams& p) {
    const Gradient g = fbar_gradient(band, p);
    csv.row({p.relative_phase(), time_average_frequency(band, p, Transition::k01),
             time_average_frequency(band, p, Transition::k12), g.d_dc, g.d_ac});
  };
  if (a.theta_points <= 0) {
    emit(cfg.pulse);
    return kExitOk;
  }
  PulseParams p = cfg.pulse;
  p.theta1 = 0.0;
  const int n = std::max(a.theta_points, 2);
  for (int i = 0; i < n; ++i) {
    p.thetap = kTwoPi * i / (n - 1);
    emit(p);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sweetspots

struct SweetArgs {
  bool mono = false;
  double dc_min = 0.0, dc_max = 0.5, dc_step = 0.01;
  double ac_min = 0.01, ac_max = 1.0, ac_step = 0.01;
  int alpha_grid = 64;
  bool no_eps0 = false;
};

int cmd_sweetspots(const Common& c, const SweetArgs& a) {
  RunConfig cfg = resolve(c);
  const BandSpectrum band = BandSpectrum::calibrate(cfg.device, cfg.trunc_tol);
  const int p = a.mono ? 1 : cfg.pulse.p;
  const double f_m = cfg.pulse.f_m;
  nlohmann::json params = cfg.echo();
  params["sweep"] = {{"mono", a.mono},       {"p", p},
                     {"dc_min", a.dc_min},   {"dc_max", a.dc_max},
                     {"dc_step", a.dc_step}, {"ac_min", a.ac_min},
                     {"ac_max", a.ac_max},   {"ac_step", a.ac_step},
                     {"alpha_grid", a.alpha_grid}};

  OutputStream out(c.out);
  CsvWriter csv(out.get(), "sweetspots", params,
                {"phi_dc", "phi_ac", "alpha", "theta", "f_bar01", "f_bar12", "grad_dc", "grad_ac",
                 "eps0"});
  auto emit = [&](const std::vector<SweetSpot>& spots) {
    std::vector<double> eps(spots.size(), std::nan(""));
    if (!a.no_eps0) {
      parallel_for(spots.size(), cfg.threads, [&](std::size_t i) {
        PulseParams pl = spots[i].pulse;
        pl.f_m = f_m;
        eps[i] = sideband_magnitude(band, pl, 0);
      });
    }
    for (std::size_t i = 0; i < spots.size(); ++i) {
      const SweetSpot& s = spots[i];
      csv.row({s.pulse.phi_dc, s.pulse.phi_ac, s.pulse.alpha, s.theta(), s.f_bar01, s.f_bar12,
               s.grad_dc, s.grad_ac, eps[i]});
    }
  };

  std::vector<SweetSpot> all;
  if (a.mono) {
    all = find_monochromatic_sweet_spots(band, a.ac_max, a.ac_step);
    emit(all);
  } else {
    AtlasOptions opt;
    opt.threads = cfg.threads;
    opt.search.alpha_grid = a.alpha_grid;
    opt.on_cell = [&](std::size_t, const std::vector<SweetSpot>& spots) { emit(spots); };
    all = sweep_continuum(band, p, grid(a.dc_min, a.dc_max, a.dc_step),
                          grid(a.ac_min, a.ac_max, a.ac_step), opt)
              .spots;
  }
  double lo = std::nan(""), hi = std::nan("");
  for (const auto& s : all) {
    lo = std::isnan(lo) ? s.f_bar01 : std::min(lo, s.f_bar01);
    hi = std::isnan(hi) ? s.f_bar01 : std::max(hi, s.f_bar01);
  }
  csv.comment("spots=" + std::to_string(all.size()) +
              " coverage=" + format_number(coverage_fraction(band, all)) +
              " f_bar01_min=" + format_number(lo) + " f_bar01_max=" + format_number(hi));
  return kExitOk;
}

// ---------------------------------------------------------------- sidebands

struct SidebandArgs {
  int k_max = 64;
  std::string transition = "01";
};

int cmd_sidebands(const Common& c, const SidebandArgs& a) {
  RunConfig cfg = resolve(c);
  cfg.pulse.validate();
  const BandSpectrum band = BandSpectrum::calibrate(cfg.device, cfg.trunc_tol);
  SidebandOptions opt;
  opt.k_max = a.k_max;
  const SidebandSet set = sideband_weights(band, cfg.pulse, parse_transition(a.transition), opt);
  nlohmann::json params = cfg.echo();
  params["k_max"] = a.k_max;
  params["transition"] = a.transition;
  OutputStream out(c.out);
  CsvWriter csv(out.get(), "sidebands", params, {"k", "re", "im", "abs", "eps_tot"});
  for (int k = -set.k_max; k <= set.k_max; ++k) {
    const auto w = set.weight(k);
    csv.row({static_cast<double>(k), w.real(), w.imag(), std::abs(w), set.eps_tot});
  }
  csv.comment("f_bar=" + format_number(set.f_bar) +
              " window_power=" + format_number(set.window_power()) +
              " samples=" + std::to_string(set.samples) +
              (set.alias_warning ? " alias_warning" : ""));
  return kExitOk;
}

// ---------------------------------------------------------------- dephasing

struct DephasingArgs {
  std::string mode = "pulse";
  int samples = 160;
};

int cmd_dephasing(const Common& c, const DephasingArgs& a) {
  RunConfig cfg = resolve(c);
  if (a.mode == "dc") {
    cfg.pulse.phi_ac = 0.0;
  } else if (a.mode != "pulse") {
    throw InvalidArgument("--mode must be dc or pulse");
  }
  const BandSpectrum band = BandSpectrum::calibrate(cfg.device, cfg.trunc_tol);
  const DephasingResult r = dephasing_time(band, cfg.pulse, cfg.noise, cfg.threads, a.samples);

  nlohmann::json params = cfg.echo();
  params["mode"] = a.mode;
  params["samples"] = a.samples;
  OutputStream out(c.out);
  CsvWriter csv(out.get(), "dephasing", params, {"t_ns", "coherence"});
  for (std::size_t i = 0; i < r.times.size(); ++i) csv.row({r.times[i], r.coherence[i]});

  const Gradient g = fbar_gradient(band, cfg.pulse);
  NoiseStrengths ns = cfg.noise.strengths;
  ns.t_ir = cfg.noise.infrared_cutoff();
  if (cfg.pulse.phi_ac == 0.0) ns.a_ac = 0.0;
  const DephasingRate est = dephasing_rate(band, cfg.pulse, ns, r.t_phi);
  nlohmann::json res{{"t_phi", r.t_phi},
                     {"beta", r.beta},
                     {"decay_kind", to_string(r.decay_kind)},
                     {"lower_bound", r.lower_bound},
                     {"fit_points", r.fit_points},
                     {"f_bar01", time_average_frequency(band, cfg.pulse)},
                     {"grad_dc", g.d_dc},
                     {"grad_ac", g.d_ac},
                     {"t_phi_first_order", est.t_phi}};
  finish_summary(c, csv, "dephasing", params, res);
  return kExitOk;
}

// ---------------------------------------------------------------- gate

struct GateArgs {
  std::string kind = "cz02";
  bool noiseless = false;
  std::optional<double> f01_min, f01_max;
  double f01_step = 0.05;
  double fm_min = 0.1, fm_max = 0.54, fm_step = 0.04;
  double ac_step = 0.02;
  double window = 0.05;
  int k = 0;
  std::string fm_scan_out;
};

int cmd_gate(const Common& c, const GateArgs& a) {
  RunConfig cfg = resolve(c);
  const GateKind kind = parse_gate_kind(a.kind);
  const BandSpectrum band = BandSpectrum::calibrate(cfg.device, cfg.trunc_tol);
  const double f_lo = a.f01_min.value_or(cfg.device.f_F01);
  const double f_hi = a.f01_max.value_or(std::max(f_lo, cfg.device.f_F01));
  const std::vector<double> targets = grid(f_lo, f_hi, a.f01_step);
  const std::vector<double> fm_grid = grid(a.fm_min, a.fm_max, a.fm_step);
  const double eta_fixed = cfg.device.f_F01 - cfg.device.f_F12;

  nlohmann::json params = cfg.echo();
  params["gate"] = {{"kind", to_string(kind)}, {"noiseless", a.noiseless},
                    {"f01_min", f_lo},        {"f01_max", f_hi},
                    {"f01_step", a.f01_step}, {"fm_min", a.fm_min},
                    {"fm_max", a.fm_max},     {"fm_step", a.fm_step},
                    {"ac_step", a.ac_step},   {"window", a.window},
                    {"k", a.k}};

  // Candidate family: sweet spots on the line phi_dc = pulse.phi_dc.
  std::vector<SweetSpot> family;
  if (a.k == 0 && kind != GateKind::kIdle) {
    AtlasOptions opt;
    opt.threads = cfg.threads;
    family = sweep_continuum(band, cfg.pulse.p, {cfg.pulse.phi_dc},
                             grid(a.ac_step, 1.0, a.ac_step), opt)
                 .spots;
  }

  OutputStream out(c.out);
  CsvWriter csv(out.get(), "gate", params,
                {"f_F01", "f_F12", "phi_dc", "phi_ac", "alpha", "theta", "f_bar", "f_m", "eps",
                 "tau", "infidelity", "infidelity_noisy"});
  std::unique_ptr<OutputStream> scan_stream;
  std::unique_ptr<CsvWriter> scan_csv;
  if (!a.fm_scan_out.empty()) {
    scan_stream = std::make_unique<OutputStream>(a.fm_scan_out);
    scan_csv = std::make_unique<CsvWriter>(
        scan_stream->get(), "gate --fm-scan-out", params,
        std::vector<std::string>{"f_F01", "f_m", "eps", "tau_analytic", "tau", "infidelity",
                                 "parasitic"});
  }

  nlohmann::json rows = nlohmann::json::array();
  const double nan = std::nan("");
  for (double target : targets) {
    DeviceSpec spec = cfg.device;
    spec.f_F01 = target;
    spec.f_F12 = target - eta_fixed;
    const SystemModel model{band, spec, {}};
    const GateResonance res = gate_resonance(kind, spec);

    std::optional<SweetSpot> spot;
    if (a.k == 0 && kind != GateKind::kIdle) {
      spot = resonant_sweet_spot(band, family, kind, spec, cfg.pulse.f_m, a.window, cfg.threads);
    } else {
      const PulseParams& pl = cfg.pulse;
      spot = make_sweet_spot(band, pl.phi_dc, pl.phi_ac, pl.alpha, pl.relative_phase(), pl.p,
                             pl.f_m);
    }
    if (!spot) {
      csv.row({target, spec.f_F12, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan});
      csv.comment("no resonant sweet spot within " + format_number(a.window) + " GHz of " +
                  format_number(res.target));
      continue;
    }

    GateSearchOptions gopt;
    gopt.threads = cfg.threads;
    if (scan_csv && kind != GateKind::kIdle) {
      for (const auto& pt : scan_modulation_frequency(model, kind, *spot, fm_grid, a.k, gopt)) {
        scan_csv->row({target, pt.f_m, pt.eps, pt.tau_analytic, pt.tau, pt.infidelity,
                       pt.parasitic ? 1.0 : 0.0});
      }
    }
    GateSpec gate;
    try {
      gate = optimize_gate(model, kind, *spot, fm_grid, a.k, gopt);
    } catch (const NoFeasibleWindow& e) {
      csv.comment(std::string("f_F01=") + format_number(target) + ": " + e.what());
      continue;
    }
    const double eps = kind == GateKind::kIdle
                           ? nan
                           : sideband_magnitude(band, gate.pulse, a.k, res.transition);
    const FidelityReport clean = gate_fidelity(model, gate, nullptr, cfg.threads);
    double noisy = nan;
    if (!a.noiseless) {
      noisy = 1.0 - gate_fidelity(model, gate, &cfg.noise, cfg.threads).f_avg;
    }
    const PulseParams& pl = gate.pulse;
    csv.row({target, spec.f_F12, pl.phi_dc, pl.phi_ac, pl.alpha, pl.relative_phase(),
             spot->f_bar(res.transition), pl.f_m, eps, gate.gate_time, 1.0 - clean.f_avg, noisy});
    rows.push_back({{"f_F01", target},
                    {"pulse", pulse_json(pl)},
                    {"tau", gate.gate_time},
                    {"local_z", {gate.local_z.fixed, gate.local_z.tunable}},
                    {"infidelity", 1.0 - clean.f_avg},
                    {"infidelity_noisy", noisy}});
  }
  finish_summary(c, csv, "gate", params, rows);
  return kExitOk;
}

// ---------------------------------------------------------------- tls

struct TlsArgs {
  std::string mode = "pulse";
  std::vector<std::string> tls;
  double window = 1000.0;
  int scan = 0;
};

std::vector<Tls> parse_tls(const std::vector<std::string>& specs, const BandSpectrum& band) {
  if (specs.empty()) {
    const double g = 0.003;
    return {{band.f_max(), g}, {band.f_min(), g}, {0.5 * (band.f_max() + band.f_min()), g}};
  }
  std::vector<Tls> out;
  for (const auto& s : specs) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw InvalidArgument("--tls expects FREQ:COUPLING");
    try {
      out.push_back({std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw InvalidArgument("--tls: cannot parse '" + s + "'");
    }
  }
  return out;
}

int cmd_tls(const Common& c, const TlsArgs& a) {
  RunConfig cfg = resolve(c);
  if (a.mode == "dc") {
    cfg.pulse.phi_ac = 0.0;
  } else if (a.mode != "pulse") {
    throw InvalidArgument("--mode must be dc or pulse");
  }
  const BandSpectrum band = BandSpectrum::calibrate(cfg.device, cfg.trunc_tol);
  const std::vector<Tls> tls = parse_tls(a.tls, band);
  const SystemModel model{band, cfg.device, tls};

  nlohmann::json params = cfg.echo();
  params["mode"] = a.mode;
  params["window"] = a.window;
  params["scan"] = a.scan;
  nlohmann::json tls_json = nlohmann::json::array();
  for (const auto& t : tls) tls_json.push_back({{"frequency", t.frequency}, {"coupling", t.coupling}});
  params["tls"] = tls_json;

  auto detuning = [&](double f_bar) {
    double d = INFINITY;
    for (const auto& t : tls) d = std::min(d, std::abs(f_bar - t.frequency));
    return d;
  };

  OutputStream out(c.out);
  if (a.scan > 0) {
    // Error versus parking frequency: DC bias swept across half a flux quantum.
    CsvWriter csv(out.get(), "tls --scan", params,
                  {"phi_dc", "f_bar01", "min_detuning", "max_error"});
    const int n = std::max(a.scan, 2);
    std::vector<double> err(n), fb(n), dc(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) {
      PulseParams p = cfg.pulse;
      p.phi_ac = 0.0;
      p.phi_dc = 0.5 * static_cast<double>(i) / (n - 1);
      dc[i] = p.phi_dc;
      fb[i] = time_average_frequency(band, p);
      err[i] = tls_leakage(model, p, a.window).max_error;
    });
    for (int i = 0; i < n; ++i) csv.row({dc[i], fb[i], detuning(fb[i]), err[i]});
    return kExitOk;
  }

  const TlsLeakage r = tls_leakage(model, cfg.pulse, a.window);
  CsvWriter csv(out.get(), "tls", params, {"t_ns", "error"});
  for (std::size_t i = 0; i < r.times.size(); ++i) csv.row({r.times[i], r.errors[i]});
  const double f_bar = time_average_frequency(band, cfg.pulse);
  nlohmann::json res{{"f_bar01", f_bar},
                     {"min_detuning", detuning(f_bar)},
                     {"max_error", r.max_error},
                     {"time_of_max", r.time_of_max}};
  finish_summary(c, csv, "tls", params, res);
  return kExitOk;
}

// ---------------------------------------------------------------- help text

const char* kHeaderNote =
    "Every CSV starts with '#' lines: code version, command, units and a one-line\n"
    "JSON echo of all parameters. Trailing '#' lines carry summaries.\n";

std::string columns_footer(const char* body) {
  return std::string("\nColumns:\n") + body + "\n" + kHeaderNote;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"fluxsweet: dynamical sweet spots of flux-modulated transmons"};
  app.set_version_flag("--version", std::string("fluxsweet ") + FLUXSWEET_VERSION);
  app.require_subcommand(1);
  app.footer(
      "Units: frequency GHz, time ns, flux Phi0.\n"
      "Exit status: 0 ok, 1 check failed, 2 usage or config error, 3 computation error.\n"
      "Env: FLUXSWEET_THREADS sets the default worker count.");

  Common common;
  int status = kExitOk;
  auto guarded = [&](auto fn) {
    return [&, fn]() { status = fn(); };
  };

  BandArgs band_args;
  auto* band = app.add_subcommand("band", "Calibrate the device and tabulate its bands");
  add_base(band, common);
  band->add_option("--points", band_args.points, "flux samples over one period")
      ->capture_default_str();
  band->add_option("--coeffs", band_args.coeffs, "write the cosine-series coefficients here");
  band->add_flag("--check", band_args.check,
                 "compare the series with the closed-form bands; exit 1 on failure");
  band->add_option("--check-samples", band_args.check_samples, "random flux points for --check")
      ->capture_default_str();
  band->add_option("--seed", common.ov.seed, "seed for the --check points");
  band->footer(columns_footer(
      "  phi    flux bias (Phi0)\n"
      "  f01    01 frequency\n"
      "  f12    12 frequency\n"
      "  mu01   01 charge-matrix-element ratio to zero flux\n"
      "  mu12   12 charge-matrix-element ratio to zero flux\n"
      "--coeffs file: n, F01_n, F12_n (f = sum_n F_n cos(2 pi n phi))"));
  band->callback(guarded([&] { return cmd_band(common, band_args); }));

  FavgArgs favg_args;
  auto* favg = app.add_subcommand("favg", "Time-averaged frequency of a pulse");
  add_base(favg, common);
  add_pulse(favg, common);
  favg->add_option("--theta-points", favg_args.theta_points,
                   "scan the relative phase over [0, 2 pi] with this many points");
  favg->footer(columns_footer(
      "  theta    relative phase thetap - p theta1 (rad)\n"
      "  f_bar01  time-averaged 01 frequency\n"
      "  f_bar12  time-averaged 12 frequency\n"
      "  grad_dc  d f_bar01 / d phi_dc (GHz/Phi0)\n"
      "  grad_ac  d f_bar01 / d phi_ac (GHz/Phi0)"));
  favg->callback(guarded([&] { return cmd_favg(common, favg_args); }));

  SweetArgs ss_args;
  auto* ss = app.add_subcommand("sweetspots", "Sweet-spot atlas over a (phi_dc, phi_ac) grid");
  add_base(ss, common);
  add_pulse(ss, common);
  ss->add_flag("--mono", ss_args.mono, "single-tone search (alpha = 0)");
  ss->add_option("--dc-min", ss_args.dc_min)->capture_default_str();
  ss->add_option("--dc-max", ss_args.dc_max)->capture_default_str();
  ss->add_option("--dc-step", ss_args.dc_step)->capture_default_str();
  ss->add_option("--ac-min", ss_args.ac_min)->capture_default_str();
  ss->add_option("--ac-max", ss_args.ac_max)->capture_default_str();
  ss->add_option("--ac-step", ss_args.ac_step)->capture_default_str();
  ss->add_option("--alpha-grid", ss_args.alpha_grid, "mixing-angle nodes per cell")
      ->capture_default_str();
  ss->add_flag("--no-eps0", ss_args.no_eps0, "skip the central sideband weight column");
  ss->footer(columns_footer(
      "  phi_dc, phi_ac  flux offset and amplitude (Phi0)\n"
      "  alpha           mixing angle (rad)\n"
      "  theta           relative phase (rad), theta1 = 0\n"
      "  f_bar01         time-averaged 01 frequency\n"
      "  f_bar12         time-averaged 12 frequency\n"
      "  grad_dc         residual d f_bar01 / d phi_dc (GHz/Phi0)\n"
      "  grad_ac         residual d f_bar01 / d phi_ac (GHz/Phi0)\n"
      "  eps0            |central sideband weight| at --fm (nan with --no-eps0)\n"
      "Rows are flushed cell by cell; a footer line reports count and coverage."));
  ss->callback(guarded([&] { return cmd_sweetspots(common, ss_args); }));

  SidebandArgs sb_args;
  auto* sb = app.add_subcommand("sidebands", "Sideband weights of a pulse");
  add_base(sb, common);
  add_pulse(sb, common);
  sb->add_option("--kmax", sb_args.k_max, "largest |k| written")->capture_default_str();
  sb->add_option("--transition", sb_args.transition, "01 or 12")->capture_default_str();
  sb->footer(columns_footer(
      "  k        sideband index\n"
      "  re, im   real and imaginary part of the weight\n"
      "  abs      magnitude of the weight\n"
      "  eps_tot  root-mean-square dressing factor (bound on every |weight|)"));
  sb->callback(guarded([&] { return cmd_sidebands(common, sb_args); }));

  DephasingArgs dp_args;
  auto* dp = app.add_subcommand("dephasing", "Free-induction decay under 1/f flux noise");
  add_base(dp, common);
  add_pulse(dp, common);
  add_noise(dp, common);
  dp->add_option("--mode", dp_args.mode, "dc (static bias at phi_dc) or pulse")
      ->capture_default_str();
  dp->add_option("--samples", dp_args.samples, "log-spaced coherence samples")
      ->capture_default_str();
  dp->footer(columns_footer(
      "  t_ns       time since preparation\n"
      "  coherence  |mean over shots of exp(i phase error)|\n"
      "Summary: t_phi, beta, decay_kind, lower_bound, fit_points, f_bar01,\n"
      "grad_dc, grad_ac, t_phi_first_order."));
  dp->callback(guarded([&] { return cmd_dephasing(common, dp_args); }));

  GateArgs gt_args;
  auto* gt = app.add_subcommand("gate", "Optimize a parametric gate at resonant sweet spots");
  add_base(gt, common);
  add_pulse(gt, common);
  add_noise(gt, common);
  gt->add_option("--kind", gt_args.kind, "iswap, cz02, cz20 or idle")->capture_default_str();
  gt->add_flag("--noiseless", gt_args.noiseless, "skip the noisy Monte Carlo");
  gt->add_option("--f01-min", gt_args.f01_min, "first fixed-transmon 01 frequency");
  gt->add_option("--f01-max", gt_args.f01_max, "last fixed-transmon 01 frequency");
  gt->add_option("--f01-step", gt_args.f01_step)->capture_default_str();
  gt->add_option("--fm-min", gt_args.fm_min)->capture_default_str();
  gt->add_option("--fm-max", gt_args.fm_max)->capture_default_str();
  gt->add_option("--fm-step", gt_args.fm_step)->capture_default_str();
  gt->add_option("--ac-step", gt_args.ac_step, "amplitude step of the candidate family")
      ->capture_default_str();
  gt->add_option("--window", gt_args.window, "max |f_bar - target| of candidates (GHz)")
      ->capture_default_str();
  gt->add_option("--k", gt_args.k, "sideband index; k != 0 uses the configured pulse")
      ->capture_default_str();
  gt->add_option("--fm-scan-out", gt_args.fm_scan_out, "write every scanned f_m here");
  gt->footer(columns_footer(
      "  f_F01, f_F12      fixed transmon frequencies of this row\n"
      "  phi_dc .. theta   optimized pulse (flux Phi0, angles rad)\n"
      "  f_bar             time-averaged frequency of the resonant transition\n"
      "  f_m               chosen modulation frequency\n"
      "  eps               |sideband weight| driving the gate\n"
      "  tau               gate time\n"
      "  infidelity        noiseless 1 - F_avg\n"
      "  infidelity_noisy  mean 1 - F_avg over noise shots (nan with --noiseless)\n"
      "--fm-scan-out: f_F01, f_m, eps, tau_analytic, tau, infidelity, parasitic (0/1)."));
  gt->callback(guarded([&] { return cmd_gate(common, gt_args); }));

  TlsArgs tl_args;
  auto* tl = app.add_subcommand("tls", "Idle error of the qubit next to two-level defects");
  add_base(tl, common);
  add_pulse(tl, common);
  tl->add_option("--mode", tl_args.mode, "dc or pulse")->capture_default_str();
  tl->add_option("--tls", tl_args.tls,
                 "FREQ:COUPLING, repeatable (default: f_max, f_min and mid-band at 3 MHz)");
  tl->add_option("--window", tl_args.window, "idle duration (ns)")->capture_default_str();
  tl->add_option("--scan", tl_args.scan, "sweep the DC bias over [0, 1/2] with N points");
  tl->add_option("--summary", common.summary, "also write the JSON summary to this path");
  tl->footer(columns_footer(
      "  t_ns   time\n"
      "  error  identity error on the qubit subspace\n"
      "--scan: phi_dc, f_bar01, min_detuning, max_error."));
  tl->callback(guarded([&] { return cmd_tls(common, tl_args); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckFailed& e) {
    std::cerr << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitLibrary;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitLibrary;
  }
  return status;
}

}  // namespace fluxsweet::cli
