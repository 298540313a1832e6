// Copyright 2026 The holosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "holosim/dynamics.hpp"
#include "holosim/gates.hpp"
#include "holosim/hybrid.hpp"

namespace {

using namespace holosim;

NoiseModel quasi_static() {
  NoiseModel noise;
  noise.detuning_sigma = detuning_sigma_from_t2star(kT2Star);
  noise.rng_seed = 1;
  return noise;
}

void BM_MonteCarloChannelSerial(benchmark::State& state) {
  const Waveform w = synthesize_nhqc_plus(gate_by_name("X"), 1024);
  const NoiseModel noise = quasi_static();
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_channel_serial(w, noise, static_cast<int>(state.range(0)), 1024));
}

void BM_MonteCarloChannelParallel(benchmark::State& state) {
  const Waveform w = synthesize_nhqc_plus(gate_by_name("X"), 1024);
  const NoiseModel noise = quasi_static();
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_channel(w, noise, static_cast<int>(state.range(0)), 1024));
}

void BM_CrotSerial(benchmark::State& state) {
  const HybridParams p;
  const CrotSequence seq = build_crot(crot_rf_spec(p), p, true);
  const NoiseModel noise = quasi_static();
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_crot_serial(seq, bell_input().projector(), noise, static_cast<int>(state.range(0))));
}

void BM_CrotParallel(benchmark::State& state) {
  const HybridParams p;
  const CrotSequence seq = build_crot(crot_rf_spec(p), p, true);
  const NoiseModel noise = quasi_static();
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_crot(seq, bell_input().projector(), noise, static_cast<int>(state.range(0))));
}

BENCHMARK(BM_MonteCarloChannelSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloChannelParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrotSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrotParallel)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
