// Copyright 2026 The swmpc Authors
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

// Parallel kernels against their serial references. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "swmpc/controller.hpp"
#include "swmpc/scenarios.hpp"
#include "swmpc/set_geometry.hpp"
#include "swmpc/strategies.hpp"

namespace {

using namespace swmpc;

OcpProblem illustrative_problem(int horizon) {
  Scenario s = illustrative_scenario();
  s.prediction_horizon = horizon;
  return s.problem();
}

void BM_SolveOcp(benchmark::State& state) {
  const OcpProblem p = illustrative_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_ocp(p).cost);
  state.counters["threads"] = omp_get_max_threads();
}

void BM_SolveOcpSerial(benchmark::State& state) {
  const OcpProblem p = illustrative_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_ocp_serial(p).cost);
}

void BM_BruteForce(benchmark::State& state) {
  const Scenario s = viral_scenario(1);
  const auto obj = LinearObjective::total_load(4, 2);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimal(s.system, s.x0, steps, obj).index);
  state.counters["threads"] = omp_get_max_threads();
}

void BM_BruteForceSerial(benchmark::State& state) {
  const Scenario s = viral_scenario(1);
  const auto obj = LinearObjective::total_load(4, 2);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_optimal_serial(s.system, s.x0, steps, obj).index);
}

// Union after `depth` backward steps, used as the input of the timed step.
PolytopeUnion controllable_input(const SwitchedSystem& sys, int depth) {
  return i_step_controllable(sys, Polytope::box(2, 0.5), depth);
}

void BM_ControllableSet(benchmark::State& state) {
  const Scenario s = illustrative_scenario();
  const PolytopeUnion in = controllable_input(s.system, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(controllable_set(s.system, in).size());
  state.counters["parts_in"] = static_cast<double>(in.size());
}

void BM_ControllableSetSerial(benchmark::State& state) {
  const Scenario s = illustrative_scenario();
  const PolytopeUnion in = controllable_input(s.system, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(controllable_set_serial(s.system, in).size());
  state.counters["parts_in"] = static_cast<double>(in.size());
}

}  // namespace

BENCHMARK(BM_SolveOcp)->Arg(8)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveOcpSerial)->Arg(8)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForce)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ControllableSet)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ControllableSetSerial)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
