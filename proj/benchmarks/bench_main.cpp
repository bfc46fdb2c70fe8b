// Copyright 2026 The hypercollapse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "hypercollapse/beta.hpp"
#include "hypercollapse/chain.hpp"
#include "hypercollapse/collapse.hpp"
#include "hypercollapse/hypergraph.hpp"
#include "hypercollapse/random.hpp"

namespace hc = hypercollapse;

static void BM_Poisson(benchmark::State& state) {
  hc::Rng rng(1, 0);
  const double mean = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(hc::poisson(rng, mean));
}
BENCHMARK(BM_Poisson)->Arg(5)->Arg(50)->Arg(5000);

static void BM_Binomial(benchmark::State& state) {
  hc::Rng rng(2, 0);
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(hc::binomial(rng, n, 0.01));
}
BENCHMARK(BM_Binomial)->Arg(100)->Arg(100000);

static void BM_SamplePoisson(benchmark::State& state) {
  hc::Rng rng(3, 0);
  const auto series = hc::example21(0.1, 2.0);
  for (auto _ : state) {
    auto h = hc::sample_poisson(series, static_cast<std::size_t>(state.range(0)), rng);
    benchmark::DoNotOptimize(h.edge_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePoisson)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Collapse(benchmark::State& state) {
  hc::Rng rng(4, 0);
  const auto series = hc::example21(0.1, 2.0);
  const auto base = hc::sample_poisson(series, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    state.PauseTiming();
    auto h = base;
    state.ResumeTiming();
    const auto trace = hc::collapse(h, hc::Randomized{&rng});
    benchmark::DoNotOptimize(trace.identifiable_edge_count);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Collapse)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ChainRun(benchmark::State& state) {
  hc::Rng rng(5, 0);
  const auto series = hc::example21(0.1, 2.0);
  for (auto _ : state) {
    const auto r = hc::run(series, state.range(0), rng);
    benchmark::DoNotOptimize(r.v_star_count);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChainRun)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_Lambda2(benchmark::State& state) {
  const hc::BetaSeries series({0.0, 0.2, 0.3, 0.1, 0.05, 0.02});
  std::int64_t n = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hc::lambda2(series, 1000000, n));
    n = (n + 7919) % 999000;
  }
}
BENCHMARK(BM_Lambda2);

static void BM_Analyze(benchmark::State& state) {
  const auto series = hc::example22(1185.0);
  for (auto _ : state) benchmark::DoNotOptimize(hc::analyze(series).z_star);
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
