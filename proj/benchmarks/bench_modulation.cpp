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

#include <vector>

#include "fluxsweet/band.hpp"
#include "fluxsweet/modulation.hpp"
#include "fluxsweet/sideband.hpp"
#include "fluxsweet/sweetspot.hpp"

namespace {

using namespace fluxsweet;

const BandSpectrum& band() {
  static const BandSpectrum b = BandSpectrum::calibrate(DeviceSpec{});
  return b;
}

const PulseParams kPulse{0.1, 0.7, 0.6, 0.0, 1.2, 3, 0.25};

void BM_TimeAverage(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(time_average_frequency(band(), kPulse));
  }
}
BENCHMARK(BM_TimeAverage);

void BM_FbarJet(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbar_jet(band(), 0.1, 0.7, 0.6, p));
  }
}
BENCHMARK(BM_FbarJet)->Arg(1)->Arg(2)->Arg(3);

void BM_FindSweetSpots(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_sweet_spots(band(), 0.2, 0.6, p));
  }
}
BENCHMARK(BM_FindSweetSpots)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_Atlas(benchmark::State& state) {
  std::vector<double> dc, ac;
  for (int i = 0; i <= 10; ++i) dc.push_back(0.05 * i);
  for (int i = 1; i <= 20; ++i) ac.push_back(0.05 * i);
  AtlasOptions opt;
  opt.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_continuum(band(), 3, dc, ac, opt));
  }
}
BENCHMARK(BM_Atlas)->Unit(benchmark::kMillisecond);

void BM_SidebandWeights(benchmark::State& state) {
  SidebandOptions opt;
  opt.k_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sideband_weights(band(), kPulse, Transition::k01, opt));
  }
}
BENCHMARK(BM_SidebandWeights)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace
