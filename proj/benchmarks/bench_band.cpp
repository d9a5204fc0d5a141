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

namespace {

using fluxsweet::BandSpectrum;
using fluxsweet::DeviceSpec;

void BM_Calibrate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(BandSpectrum::calibrate(DeviceSpec{}));
  }
}
BENCHMARK(BM_Calibrate)->Unit(benchmark::kMillisecond);

void BM_Frequency(benchmark::State& state) {
  const auto band = BandSpectrum::calibrate(DeviceSpec{});
  double phi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(band.frequencies(phi));
    phi += 1e-3;
  }
}
BENCHMARK(BM_Frequency);

void BM_CouplingFactors(benchmark::State& state) {
  const auto band = BandSpectrum::calibrate(DeviceSpec{});
  double phi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(band.coupling_factors(phi));
    phi += 1e-3;
  }
}
BENCHMARK(BM_CouplingFactors);

}  // namespace
