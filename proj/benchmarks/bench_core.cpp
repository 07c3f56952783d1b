// Copyright 2026 The botnash Authors
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

#include "botnash/allocations.hpp"
#include "botnash/equilibrium.hpp"
#include "botnash/fluidsim.hpp"
#include "botnash/rng.hpp"

namespace {

using namespace botnash;

System random_system(std::uint64_t seed, int apps, int workers) {
  Rng rng(seed);
  System s;
  s.label = "bench";
  for (int k = 0; k < apps; ++k) {
    s.apps.push_back({rng.log_uniform(1e-2, 1e2), rng.log_uniform(1e-2, 1e2)});
  }
  for (int n = 0; n < workers; ++n) {
    s.workers.push_back({rng.log_uniform(1e-2, 1e2), rng.log_uniform(1e-2, 1e2)});
  }
  return s;
}

void BM_SystemEquilibrium(benchmark::State& state) {
  const System s =
      random_system(7, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(system_equilibrium(s));
  }
}
BENCHMARK(BM_SystemEquilibrium)->Args({2, 2})->Args({6, 4})->Args({16, 8})->Args({64, 16});

void BM_SdfInstance(benchmark::State& state) {
  const System s =
      random_system(11, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sdf_instance(s));
  }
}
BENCHMARK(BM_SdfInstance)->Args({2, 2})->Args({4, 3})->Args({6, 4});

void BM_MaxMinFair(benchmark::State& state) {
  const System s =
      random_system(13, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_min_fair(s));
  }
}
BENCHMARK(BM_MaxMinFair)->Args({2, 2})->Args({4, 3})->Args({6, 4});

void BM_FluidSim(benchmark::State& state) {
  System s;
  s.label = "bench-2x2";
  s.apps = {{1.0, 2.0}, {2.0, 1.0}};
  s.workers = {{1.0, 2.0}, {2.0, 1.0}};
  SimConfig cfg;
  cfg.horizon = static_cast<double>(state.range(0));
  cfg.warmup = cfg.horizon / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(s, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.horizon));
}
BENCHMARK(BM_FluidSim)->Arg(200)->Arg(2000)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
