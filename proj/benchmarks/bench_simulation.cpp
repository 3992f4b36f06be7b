// Copyright 2026 The care-dtn Authors
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

#include "care/config.hpp"
#include "care/contacts.hpp"
#include "care/map_graph.hpp"
#include "care/rng.hpp"
#include "care/simulator.hpp"
#include "care/workload.hpp"

namespace care {
namespace {

void BM_DetectContacts(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Point> pos(n);
  for (auto& p : pos) p = {rng.uniform(0.0, 16000.0), rng.uniform(0.0, 13000.0)};
  const std::vector<double> ranges(n, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(detect_contacts(pos, ranges));
}
BENCHMARK(BM_DetectContacts)->Arg(52)->Arg(1000);

void BM_ShortestPath(benchmark::State& state) {
  ScenarioConfig cfg;
  const ScenarioMap map = build_scenario_map(cfg);
  Rng rng(8);
  for (auto _ : state) {
    const auto a = map.region_vertices[rng.index(map.region_vertices.size())];
    benchmark::DoNotOptimize(shortest_path(map.graph, a, map.gateway_vertex));
  }
}
BENCHMARK(BM_ShortestPath);

// One full desk-scenario run (5 simulated hours).
void BM_DeskRun(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.target_redundancy_Rsim = 0.6;
  const WorkloadSchedule schedule = generate_schedule(cfg);
  const ScenarioMap map = build_scenario_map(cfg);
  SimOptions opts;
  opts.router = state.range(0) ? RouterKind::kCare : RouterKind::kEpidemic;
  opts.record_events = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg, schedule, map, opts));
}
BENCHMARK(BM_DeskRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace care
