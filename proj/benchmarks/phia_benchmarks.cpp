// Copyright 2026 The PHIA Authors
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


#include <benchmark/benchmark.h>

#include <cmath>

#include "phia/annealer.hpp"
#include "phia/baselines.hpp"
#include "phia/cycle_model.hpp"
#include "phia/fixedpoint.hpp"
#include "phia/hmc.hpp"
#include "phia/problems.hpp"
#include "phia/rng.hpp"

namespace phia {
namespace {

IsingProblem instance(Family family, std::size_t n) {
  GenSpec spec;
  spec.family = family;
  spec.n = n;
  spec.seed = 1;
  return generate(spec);
}

PhaseState start_state(std::size_t n) {
  CounterRng rng(3, 0);
  PhaseState s;
  for (std::size_t i = 0; i < n; ++i) {
    s.x.push_back(rng.normal());
    s.v.push_back(rng.normal());
  }
  return s;
}

void BM_Energy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = instance(Family::kSkIsing, n);
  const SpinConfig s = sign_config(start_state(n).x);
  for (auto _ : state) benchmark::DoNotOptimize(energy(p, s));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(p.couplings().size()));
}
BENCHMARK(BM_Energy)->RangeMultiplier(2)->Range(32, 512);

template <Family F>
void BM_EmStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = instance(F, n);
  auto st = start_state(n);
  HmcParams params;
  EmIntegrator integrator(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrator.step(st, params));
    // Keep the orbit bounded without a trajectory restart.
    if (std::abs(st.x[0]) > 100.0) st = start_state(n);
  }
}
BENCHMARK(BM_EmStep<Family::kSkIsing>)->RangeMultiplier(2)->Range(32, 512);
BENCHMARK(BM_EmStep<Family::kMaxcutD3>)->RangeMultiplier(2)->Range(64, 4096);

void BM_FixedStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = instance(Family::kSpinModel, n);
  FixedArithmetic arith(FixedFormat{});
  FixedIntegrator integrator(p, 2.0, arith);
  const auto start = start_state(n);
  FixedPhaseState st;
  for (std::size_t i = 0; i < n; ++i) {
    st.x.push_back(arith.quantize(start.x[i]));
    st.v.push_back(arith.quantize(start.v[i]));
  }
  const Fixed beta = arith.quantize(1.0);
  const Fixed eps = arith.quantize(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(integrator.step(st, beta, eps));
}
BENCHMARK(BM_FixedStep)->RangeMultiplier(2)->Range(32, 256);

void BM_SaSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = instance(Family::kMaxcutD3, n);
  SaConfig config;
  config.sweeps = 100;
  for (auto _ : state) benchmark::DoNotOptimize(sa_anneal(p, config).best_E);
  state.SetItemsProcessed(state.iterations() * 100 *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SaSweep)->RangeMultiplier(2)->Range(64, 1024);

void BM_PhiaAnneal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = instance(Family::kMaxcutD3, n);
  AnnealConfig config;
  config.outer_steps = 100;
  for (auto _ : state) benchmark::DoNotOptimize(anneal(p, config).best_E);
}
BENCHMARK(BM_PhiaAnneal)->RangeMultiplier(2)->Range(64, 1024);

void BM_GahmcTrajectory(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = instance(Family::kSkBool, n);
  const auto phase = start_state(n);
  for (auto _ : state) {
    GahmcState st{phase, sign_config(phase.x)};
    benchmark::DoNotOptimize(
        gahmc_trajectory(p, st, 1.0, 1.5707963267948966, 10000).crossings);
  }
}
BENCHMARK(BM_GahmcTrajectory)->RangeMultiplier(2)->Range(32, 256);

void BM_CycleEstimate(benchmark::State& state) {
  std::size_t n = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cycle_estimate(n, 100).est);
    n = n == 4096 ? 8 : n + 8;
  }
}
BENCHMARK(BM_CycleEstimate);

void BM_StateMachineTrace(benchmark::State& state) {
  const auto l = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(state_machine_trace(200, l).run_total());
  }
}
BENCHMARK(BM_StateMachineTrace)->Arg(1)->Arg(10)->Arg(100);

}  // namespace
}  // namespace phia

BENCHMARK_MAIN();
