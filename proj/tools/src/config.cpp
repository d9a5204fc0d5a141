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

#include "config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fluxsweet/parallel.hpp"

namespace fluxsweet::cli {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "'" + path + "': " + e.what());
  }
}

void reject_unknown(const json& obj, const std::string& prefix,
                    const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ConfigError(prefix + item.key(), "unknown key");
  }
}

template <typename T>
void read(const json& obj, const std::string& prefix, const char* key, T& out, bool required) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw ConfigError(prefix + key, "missing required field");
    return;
  }
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(prefix + key, "expected " + std::string(std::is_integral_v<T> ? "an integer"
                                                                                   : "a number"));
  }
}

json object_at(const json& root, const char* key) {
  const auto& v = root.at(key);
  if (!v.is_object()) throw ConfigError(key, "expected an object");
  return v;
}

}  // namespace

nlohmann::json RunConfig::echo() const {
  return json{
      {"device",
       {{"f_max", device.f_max},
        {"f_min", device.f_min},
        {"eta_max", device.eta_max},
        {"g", device.g},
        {"f_F01", device.f_F01},
        {"f_F12", device.f_F12}}},
      {"pulse",
       {{"phi_dc", pulse.phi_dc},
        {"phi_ac", pulse.phi_ac},
        {"alpha", pulse.alpha},
        {"theta1", pulse.theta1},
        {"thetap", pulse.thetap},
        {"p", pulse.p},
        {"f_m", pulse.f_m}}},
      {"noise",
       {{"a_dc", noise.strengths.a_dc},
        {"a_ac", noise.strengths.a_ac},
        {"t_ir", noise.strengths.t_ir},
        {"dt", noise.dt},
        {"duration", noise.duration},
        {"n_shots", noise.n_shots},
        {"seed", noise.seed}}},
      {"band", {{"trunc_tol", trunc_tol}}},
  };
}

RunConfig load_config(const std::string& path) {
  const json root = parse_file(path);
  if (!root.is_object()) throw ConfigError("", "top level must be an object");
  reject_unknown(root, "", {"device", "pulse", "noise", "band", "threads"});

  RunConfig cfg;
  if (root.contains("device")) {
    json dev = root.at("device");
    std::string prefix = "device.";
    if (dev.is_string()) {
      // Relative device paths resolve against the referencing config.
      std::filesystem::path dev_path = dev.get<std::string>();
      if (dev_path.is_relative()) dev_path = std::filesystem::path(path).parent_path() / dev_path;
      dev = parse_file(dev_path.string());
      if (dev.is_object() && dev.size() == 1 && dev.contains("device")) dev = dev.at("device");
      prefix = dev_path.string() + ":";
    }
    if (!dev.is_object()) throw ConfigError("device", "expected an object or a file path");
    reject_unknown(dev, prefix, {"f_max", "f_min", "eta_max", "g", "f_F01", "f_F12"});
    read(dev, prefix, "f_max", cfg.device.f_max, true);
    read(dev, prefix, "f_min", cfg.device.f_min, true);
    read(dev, prefix, "eta_max", cfg.device.eta_max, true);
    read(dev, prefix, "g", cfg.device.g, true);
    read(dev, prefix, "f_F01", cfg.device.f_F01, true);
    read(dev, prefix, "f_F12", cfg.device.f_F12, true);
  }
  if (root.contains("pulse")) {
    const json pl = object_at(root, "pulse");
    reject_unknown(pl, "pulse.", {"phi_dc", "phi_ac", "alpha", "theta1", "thetap", "p", "f_m"});
    read(pl, "pulse.", "phi_dc", cfg.pulse.phi_dc, false);
    read(pl, "pulse.", "phi_ac", cfg.pulse.phi_ac, false);
    read(pl, "pulse.", "alpha", cfg.pulse.alpha, false);
    read(pl, "pulse.", "theta1", cfg.pulse.theta1, false);
    read(pl, "pulse.", "thetap", cfg.pulse.thetap, false);
    read(pl, "pulse.", "p", cfg.pulse.p, false);
    read(pl, "pulse.", "f_m", cfg.pulse.f_m, false);
  }
  if (root.contains("noise")) {
    const json nz = object_at(root, "noise");
    reject_unknown(nz, "noise.", {"a_dc", "a_ac", "t_ir", "dt", "duration", "n_shots", "seed"});
    read(nz, "noise.", "a_dc", cfg.noise.strengths.a_dc, false);
    read(nz, "noise.", "a_ac", cfg.noise.strengths.a_ac, false);
    read(nz, "noise.", "t_ir", cfg.noise.strengths.t_ir, false);
    read(nz, "noise.", "dt", cfg.noise.dt, false);
    read(nz, "noise.", "duration", cfg.noise.duration, false);
    read(nz, "noise.", "n_shots", cfg.noise.n_shots, false);
    read(nz, "noise.", "seed", cfg.noise.seed, false);
  }
  if (root.contains("band")) {
    const json bd = object_at(root, "band");
    reject_unknown(bd, "band.", {"trunc_tol"});
    read(bd, "band.", "trunc_tol", cfg.trunc_tol, false);
  }
  read(root, "", "threads", cfg.threads, false);
  return cfg;
}

void Overrides::apply(RunConfig& c) const {
  auto set = [](auto& dst, const auto& src) {
    if (src) dst = *src;
  };
  set(c.device.f_max, f_max);
  set(c.device.f_min, f_min);
  set(c.device.eta_max, eta_max);
  set(c.device.g, g);
  set(c.device.f_F01, f_F01);
  set(c.device.f_F12, f_F12);
  set(c.pulse.phi_dc, phi_dc);
  set(c.pulse.phi_ac, phi_ac);
  set(c.pulse.alpha, alpha);
  set(c.pulse.theta1, theta1);
  set(c.pulse.thetap, thetap);
  set(c.pulse.f_m, f_m);
  set(c.pulse.p, p);
  set(c.noise.strengths.a_dc, a_dc);
  set(c.noise.strengths.a_ac, a_ac);
  set(c.noise.strengths.t_ir, t_ir);
  set(c.noise.dt, dt);
  set(c.noise.duration, duration);
  set(c.noise.n_shots, shots);
  set(c.noise.seed, seed);
  set(c.trunc_tol, trunc_tol);
  set(c.threads, threads);
  c.threads = resolve_thread_count(c.threads);
}

}  // namespace fluxsweet::cli
