// Copyright 2026 The OptiCollect Authors. All Rights Reserved.
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
// =============================================================================
#include <benchmark/benchmark.h>

#include "opticollect/analysis.hpp"
#include "opticollect/baselines.hpp"
#include "opticollect/wrht.hpp"

namespace oc = opticollect;

static void BM_VerifyWrht(benchmark::State& state) {
  const auto s = oc::build_wrht(static_cast<int>(state.range(0)), 64).schedule;
  for (auto _ : state) benchmark::DoNotOptimize(oc::verify_allreduce(s));
}
BENCHMARK(BM_VerifyWrht)->RangeMultiplier(4)->Range(64, 4096);

static void BM_VerifyRing(benchmark::State& state) {
  const auto s = oc::build_ring(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oc::verify_allreduce(s));
}
BENCHMARK(BM_VerifyRing)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

static void BM_SimulateTime(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = oc::build_bt(n);
  for (auto& st : s.steps)
    for (auto& t : st.transfers) t.wavelength = 0;
  const oc::CostModel model(40e9, 25e-6, 8e8);
  for (auto _ : state) benchmark::DoNotOptimize(oc::simulate_time(s, model));
}
BENCHMARK(BM_SimulateTime)->Arg(4096);

BENCHMARK_MAIN();
