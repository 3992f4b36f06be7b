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

// Subcommand entry points of the care tool.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace care::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct ScenarioArgs {
  std::string config;
  std::string manifest;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

struct SimulateArgs {
  ScenarioArgs scenario;
  std::string out = "out";
  bool no_events = false;
};

struct SweepArgs {
  ScenarioArgs scenario;
  std::vector<std::string> grid;
  std::string seeds = "1";
  std::string out = "sweep_out";
  unsigned workers = 0;
};

struct ScheduleArgs {
  ScenarioArgs scenario;
};

struct MapArgs {
  ScenarioArgs scenario;
};

struct RedundancyArgs {
  std::string labels;
  std::string items;
  std::string format = "csv";
  std::size_t exact_limit = 25;
};

struct RocArgs {
  std::string scores;
  std::string labels;
  bool lower_is_similar = false;
  std::optional<double> target_fp;
  std::optional<double> target_fn;
};

struct PipelineArgs {
  std::string labels;
  std::string metadata;
  std::string phash;
  std::string gist;
  std::string sift;
  std::optional<double> t_gist;
  std::optional<double> t_phash;
  std::optional<double> t_sift;
  double target_fn_gist = 0.30;
  double target_fp_phash = 0.01;
  double target_fp_sift = 0.01;
  double max_distance = 100.0;
  double max_age = 3600.0;
  double c_phash = 1.0;
  double c_gist = 50.0;
  double c_sift = 150.0;
  bool gist_uncertain = false;
  std::string format = "csv";
};

struct PhashArgs {
  std::vector<std::string> images;
  bool pairwise = false;
};

struct ChunkArgs {
  std::vector<std::string> files;
  std::size_t chunk_size = 512;
};

/// argv is recorded in run manifests.
int cmd_simulate(const SimulateArgs& a, const std::vector<std::string>& argv);
int cmd_sweep(const SweepArgs& a, const std::vector<std::string>& argv);
int cmd_schedule(const ScheduleArgs& a);
int cmd_gen_map(const MapArgs& a);
int cmd_redundancy(const RedundancyArgs& a);
int cmd_roc(const RocArgs& a);
int cmd_pipeline(const PipelineArgs& a);
int cmd_phash(const PhashArgs& a);
int cmd_chunk(const ChunkArgs& a);

}  // namespace care::cli
