// Copyright 2026 The fdsched Authors
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

#include <vector>

#include "fdsched/analysis.hpp"
#include "fdsched/power.hpp"
#include "fdsched/sim.hpp"
#include "fdsched/specfun.hpp"

namespace {

using namespace fdsched;

void BM_Ei(benchmark::State& state) {
  double t = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::exp_integral_ei(t));
    t = t < -50.0 ? -0.5 : t * 1.1;
  }
}
BENCHMARK(BM_Ei);

void BM_XiN(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::xi_n(n, 0.05, 1.25));
}
BENCHMARK(BM_XiN)->Arg(1)->Arg(5)->Arg(15);

template <class Select>
void run_selector(benchmark::State& state, Select select) {
  const int k = static_cast<int>(state.range(0));
  const SystemConfig config{1.0, 0.8, 1e-2, 1e-2, 1e-3, k, k};
  RandomStream rng(1, 0);
  std::vector<ChannelRealization> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(draw_realization(config, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(select(pool[i], config));
    i = (i + 1) % pool.size();
  }
}

void BM_SelectA2(benchmark::State& state) { run_selector(state, select_a2); }
void BM_SelectEsFdhd(benchmark::State& state) { run_selector(state, select_es_fdhd); }
void BM_OpaA3(benchmark::State& state) {
  run_selector(state, [](const ChannelRealization& ch, const SystemConfig& c) {
    return opa_enhanced_schedule(ch, c, BaseSelector::A3);
  });
}
BENCHMARK(BM_SelectA2)->Arg(5)->Arg(20);
BENCHMARK(BM_SelectEsFdhd)->Arg(5)->Arg(20);
BENCHMARK(BM_OpaA3)->Arg(5)->Arg(20);

void BM_ClosedFormA2(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const analysis::AnalyticalParams p{1.0, 0.8, 1e-2, 1e-2, 1e-8, k, k};
  for (auto _ : state) benchmark::DoNotOptimize(analysis::avg_rate_a2(p));
}
BENCHMARK(BM_ClosedFormA2)->Arg(2)->Arg(5)->Arg(15)->Unit(benchmark::kMicrosecond);

void BM_RunTrials(benchmark::State& state) {
  const SystemConfig config{1.0, 0.8, 1e-2, 1e-2, 1e-3, 5, 5};
  RunOptions options;
  options.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trials(config, Scheduler::A1_OPA, 10000, 7, options));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_RunTrials)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
