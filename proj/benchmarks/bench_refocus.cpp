// Copyright 2026 The Refocus Authors
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

#include "refocus/cnot.hpp"
#include "refocus/fidelity.hpp"
#include "refocus/parity.hpp"
#include "refocus/rng.hpp"

namespace refocus {
namespace {

void BM_MsGate(benchmark::State& state) {
  Rng rng(1);
  Statevector s = haar_random_state(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    s.ms(0, 1, 0.01);
    benchmark::DoNotOptimize(s[0]);
  }
}
BENCHMARK(BM_MsGate)->Arg(3)->Arg(4);

void BM_MeasurementBranches(benchmark::State& state) {
  const std::array<Complex, 4> half{0.5, 0.5, 0.5, 0.5};
  const Statevector input = with_ancilla(Statevector::from_amplitudes(half));
  ProtocolConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  EstimatorOptions o;
  o.trials = 256;
  o.workers = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto r = estimate_measurement_fidelity(input, ParityKind::ZZ, cfg, NoiseParams{0.3, 0.0, ++seed}, o);
    benchmark::DoNotOptimize(r.infidelity);
  }
  state.SetItemsProcessed(state.iterations() * o.trials);
}
BENCHMARK(BM_MeasurementBranches)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CnotBranches(benchmark::State& state) {
  const Statevector s2 = basis_state(2, "10");
  ProtocolConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  EstimatorOptions o;
  o.trials = 64;
  o.workers = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto r = estimate_cnot_fidelity(s2, cfg, NoiseParams{0.1, 1e-4, ++seed}, o);
    benchmark::DoNotOptimize(r.infidelity);
  }
  state.SetItemsProcessed(state.iterations() * o.trials);
}
BENCHMARK(BM_CnotBranches)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace refocus

BENCHMARK_MAIN();
