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


#include <benchmark/benchmark.h>

#include "fluxsweet/band.hpp"
#include "fluxsweet/dynamics.hpp"
#include "fluxsweet/noise.hpp"

namespace {

using namespace fluxsweet;

void BM_NoiseShot(benchmark::State& state) {
  NoiseModel model;
  model.duration = static_cast<double>(state.range(0));
  model.strengths.t_ir = 1e5;
  const NoiseGenerator gen(model);
  std::size_t j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen.shot(j++));
  }
}
BENCHMARK(BM_NoiseShot)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_EvolveTwoTransmon(benchmark::State& state) {
  const DeviceSpec spec{5.0, 4.2, 0.2, 0.0025, 4.45, 4.25};
  const SystemModel model{BandSpectrum::calibrate(spec), spec, {}};
  const PulseParams pulse{0.0, 0.8, 0.9, 0.0, 2.0, 3, 0.3};
  const double duration = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(model, pulse, nullptr, duration));
  }
}
BENCHMARK(BM_EvolveTwoTransmon)->Arg(20)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_EvolveNoisy(benchmark::State& state) {
  const DeviceSpec spec{5.0, 4.2, 0.2, 0.0025, 4.45, 4.25};
  const SystemModel model{BandSpectrum::calibrate(spec), spec, {}};
  const PulseParams pulse{0.0, 0.8, 0.9, 0.0, 2.0, 3, 0.3};
  NoiseModel nm;
  nm.duration = 150.0;
  nm.strengths.t_ir = 1e5;
  const NoiseGenerator gen(nm);
  const auto traj = gen.shot(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(model, pulse, &traj, 150.0));
  }
}
BENCHMARK(BM_EvolveNoisy)->Unit(benchmark::kMillisecond);

}  // namespace
