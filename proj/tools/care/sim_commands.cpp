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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "care/config.hpp"
#include "care/error.hpp"
#include "care/experiment.hpp"
#include "care/manifest.hpp"
#include "care/map_graph.hpp"
#include "commands.hpp"

namespace care::cli {

namespace fs = std::filesystem;

namespace {

ScenarioConfig resolve_config(const ScenarioArgs& a) {
  ScenarioConfig cfg;
  if (!a.config.empty() && !a.manifest.empty()) {
    throw InvalidInput("--config and --manifest are mutually exclusive");
  }
  if (!a.config.empty()) cfg = load_config(a.config);
  if (!a.manifest.empty()) cfg = read_manifest_config(a.manifest);
  for (const auto& o : a.overrides) apply_override(cfg, o);
  if (a.seed) cfg.rng_seed = *a.seed;
  require_valid(cfg);
  return cfg;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
}

template <typename Fn>
void write_file(const fs::path& path, Fn body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  body(out);
  out.flush();
  if (!out) throw IoError(fmt::format("short write to '{}'", path.string()));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int cmd_simulate(const SimulateArgs& a, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioConfig cfg = resolve_config(a.scenario);
  const fs::path out(a.out);
  ensure_dir(out);

  const PairedResult r = paired_run(cfg, !a.no_events);
  const SummaryRow row = summarize(r);

  RunManifest m;
  m.command = "simulate";
  m.arguments = argv;
  m.config = cfg;
  m.seed = cfg.rng_seed;
  auto emit = [&](const std::string& name, auto body) {
    write_file(out / name, body);
    m.outputs.push_back(name);
  };
  emit("summary.csv", [&](std::ostream& o) { write_summary_csv(o, {row}); });
  emit("unique_over_time.csv", [&](std::ostream& o) { write_unique_over_time_csv(o, r); });
  emit("latency_cdf.csv", [&](std::ostream& o) { write_latency_cdf_csv(o, r); });
  emit("unique_latency_cdf.csv", [&](std::ostream& o) { write_unique_latency_cdf_csv(o, r); });
  emit("schedule.csv", [&](std::ostream& o) { write_schedule_csv(o, r.schedule); });
  emit("config.json", [&](std::ostream& o) { o << to_canonical_json(cfg); });
  if (!a.no_events) {
    emit("events_care.csv", [&](std::ostream& o) { write_event_log_csv(o, r.care.events); });
    emit("events_nonre.csv", [&](std::ostream& o) { write_event_log_csv(o, r.nonre.events); });
  }
  m.wall_seconds = seconds_since(start);
  write_manifest_atomic(out / "manifest.json", m);

  write_summary_csv(std::cout, {row});
  return kExitOk;
}

int cmd_sweep(const SweepArgs& a, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioConfig base = resolve_config(a.scenario);
  SweepSpec spec;
  for (const auto& g : a.grid) spec.axes.push_back(parse_sweep_axis(g));
  spec.seeds = parse_seed_list(a.seeds);
  // Validate the grid before spending time on runs.
  expand_grid(base, spec);

  const fs::path out(a.out);
  ensure_dir(out / "cells");
  const unsigned workers =
      a.workers > 0 ? a.workers : std::max(1U, std::thread::hardware_concurrency());
  const SweepResult r = run_sweep(base, spec, workers, [](std::size_t done, std::size_t total) {
    std::cerr << fmt::format("\r[{}/{}] paired runs", done, total) << std::flush;
  });
  std::cerr << '\n';

  RunManifest m;
  m.command = "sweep";
  m.arguments = argv;
  m.config = base;
  m.seed = base.rng_seed;
  for (std::size_t c = 0; c < r.cells.size(); ++c) {
    SweepResult one;
    one.cells = r.cells;
    for (const auto& row : r.rows) {
      if (row.cell == c) one.rows.push_back(row);
    }
    const std::string name = fmt::format("cells/cell_{:03}.csv", c);
    write_file(out / name, [&](std::ostream& o) { write_sweep_summary_csv(o, one); });
    m.outputs.push_back(name);
  }
  write_file(out / "summary.csv", [&](std::ostream& o) { write_sweep_summary_csv(o, r); });
  write_file(out / "cells.csv", [&](std::ostream& o) { write_sweep_cells_csv(o, r); });
  m.outputs.push_back("summary.csv");
  m.outputs.push_back("cells.csv");
  m.wall_seconds = seconds_since(start);
  write_manifest_atomic(out / "manifest.json", m);

  write_sweep_cells_csv(std::cout, r);
  return kExitOk;
}

int cmd_schedule(const ScheduleArgs& a) {
  const ScenarioConfig cfg = resolve_config(a.scenario);
  write_schedule_csv(std::cout, schedule_for(cfg));
  return kExitOk;
}

int cmd_gen_map(const MapArgs& a) {
  const ScenarioConfig cfg = resolve_config(a.scenario);
  write_map(std::cout, build_scenario_map(cfg).graph);
  return kExitOk;
}

}  // namespace care::cli
