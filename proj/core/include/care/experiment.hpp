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

// Paired CARE vs non-RE runs, parameter sweeps and their CSV outputs.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "care/config.hpp"
#include "care/simulator.hpp"
#include "care/workload.hpp"

namespace care {

struct PairedResult {
  ScenarioConfig cfg;
  WorkloadSchedule schedule;
  RunResult care;
  RunResult nonre;
  std::size_t u_care = 0;
  std::size_t u_nonre = 0;
  std::optional<double> improvement;
};

/// Both runs share the schedule (imported from cfg.schedule_file or
/// generated), the map and the mobility sub-streams; only the router
/// differs.
PairedResult paired_run(const ScenarioConfig& cfg, bool record_events = true);

/// Schedule for cfg: imported when cfg.schedule_file is set, else generated.
WorkloadSchedule schedule_for(const ScenarioConfig& cfg);

struct SummaryRow {
  std::uint64_t seed = 0;
  double r_sim = 0.0;
  double pr_disaster = 0.0;
  std::size_t u_care = 0;
  std::size_t u_nonre = 0;
  std::optional<double> improvement;
  std::size_t drops_care = 0;
  std::size_t drops_nonre = 0;
  double disaster_time_fraction = 0.0;
  double realized_redundancy = 0.0;
  std::optional<double> median_unique_latency_care;
  std::optional<double> median_unique_latency_nonre;
};

SummaryRow summarize(const PairedResult& r);

/// seed,R_sim,pr_disaster,U_care,U_nonre,improvement,drops_care,drops_nonre,
/// then disaster_time_fraction, realized_redundancy and the two median
/// unique-message latencies. Undefined values are written as "undefined".
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
/// tick,count,router
void write_unique_over_time_csv(std::ostream& out, const PairedResult& r);
/// latency,fraction,router over every delivered message.
void write_latency_cdf_csv(std::ostream& out, const PairedResult& r);
/// Same over the first delivery of each cluster.
void write_unique_latency_cdf_csv(std::ostream& out, const PairedResult& r);

struct SweepAxis {
  std::string key;                  // config key
  std::vector<std::string> values;  // raw override values
};

struct SweepSpec {
  std::vector<SweepAxis> axes;
  std::vector<std::uint64_t> seeds;
};

/// "key=v1,v2,..." into an axis. Throws InvalidInput on a malformed spec.
SweepAxis parse_sweep_axis(std::string_view text);
/// "1,2,7" or "1-5" (inclusive) or a mix.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

struct SweepCell {
  std::vector<std::pair<std::string, std::string>> assignment;
  ScenarioConfig cfg;
};

/// Cartesian product, first axis outermost. Every cell config is validated.
/// Throws InvalidInput for an empty grid or seed list.
std::vector<SweepCell> expand_grid(const ScenarioConfig& base, const SweepSpec& spec);

struct SweepRow {
  std::size_t cell = 0;
  SummaryRow summary;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<SweepRow> rows;  // cell-major, then seed order
};

/// Runs every (cell, seed) paired run on `workers` threads. `on_done` is
/// called (serialized) after each job.
SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec, std::size_t workers,
                      const std::function<void(std::size_t done, std::size_t total)>& on_done = {});

/// One row per cell x seed with the axis values and the cell's mean and
/// standard deviation of improvement appended.
void write_sweep_summary_csv(std::ostream& out, const SweepResult& r);
/// One row per cell: axes, seeds, mean/stddev improvement, mean disaster
/// time fraction, mean U_care and U_nonre.
void write_sweep_cells_csv(std::ostream& out, const SweepResult& r);

}  // namespace care
