// Copyright 2026 The Authors.
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

// Solver runtimes by user count, and the sweep trial kernel serial vs OpenMP.

#include <benchmark/benchmark.h>

#include <vector>

#include "pies/harness.hpp"
#include "pies/placement.hpp"

namespace {

using namespace pies;

GenParams desk(int users) {
  GenParams p;
  p.num_edges = 10;
  p.num_services = 20;
  p.models_per_service = {1, 5};
  p.num_users = users;
  return p;
}

void BM_Solve(benchmark::State& state, Algorithm a) {
  const auto sc = generate(desk(static_cast<int>(state.range(0))), 1);
  const QosTable table(sc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(a, sc, table, SolveOptions{{}, 1}).objective);
  }
}
BENCHMARK_CAPTURE(BM_Solve, EXACT, Algorithm::kExact)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK_CAPTURE(BM_Solve, AGP, Algorithm::kAgp)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK_CAPTURE(BM_Solve, EGP, Algorithm::kEgp)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK_CAPTURE(BM_Solve, SCK, Algorithm::kSck)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK_CAPTURE(BM_Solve, RND, Algorithm::kRnd)->RangeMultiplier(2)->Range(64, 1024);

// threads: 1 runs the serial reference loop.
void BM_Sweep(benchmark::State& state) {
  const std::vector<int> counts{50, 100, 150, 200, 250};
  const std::vector<Algorithm> algs{Algorithm::kExact, Algorithm::kAgp,
                                    Algorithm::kEgp, Algorithm::kSck,
                                    Algorithm::kRnd};
  SweepOptions opt;
  opt.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(desk(0), counts, 4, algs, 7, opt).records.size());
  }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
