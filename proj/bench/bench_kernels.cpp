// Copyright 2026 The psfilter Authors
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

// Serial reference vs OpenMP for the parallel kernels. The second benchmark
// argument selects the backend: 0 serial, 1 OpenMP.

#include <benchmark/benchmark.h>

#include "psfilter/figures.hpp"
#include "psfilter/optimize.hpp"
#include "psfilter/random.hpp"

using namespace psfilter;

namespace {

kernels::Backend backend_of(const benchmark::State& state) {
  return state.range(1) == 0 ? kernels::Backend::Serial : kernels::Backend::OpenMP;
}

void BM_GridSearchPP(benchmark::State& state) {
  const NoiseGeometry geom(0.3, 10, 5);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_search_pp(geom, n, backend_of(state)).value);
  state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_GridSearchDS(benchmark::State& state) {
  const NoiseGeometry geom(0.4, 8, 3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_search_ds(geom, 0.3, n, 8, backend_of(state)).value);
}

void BM_Figures(benchmark::State& state) {
  figures::FigureOptions opts;
  opts.backend = backend_of(state);
  for (auto _ : state) {
    for (const std::string& p : figures::panels()) benchmark::DoNotOptimize(figures::make_figure(p, opts).columns.size());
  }
}

void BM_FilterSearch(benchmark::State& state) {
  random::Rng rng = random::make_rng(3);
  const ParameterizedModel model = random::model(rng, static_cast<int>(state.range(0)), 1);
  const RVector theta = random::real_vector(rng, 1, -1.0, 1.0);
  SearchOptions so;
  so.restarts = 8;
  so.iterations = 200;
  so.backend = backend_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_filter_search(model, theta, 0.3, 0.3, so).amplification);
}

}  // namespace

BENCHMARK(BM_GridSearchPP)->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSearchDS)->ArgsProduct({{101, 201}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Figures)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterSearch)->ArgsProduct({{3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
