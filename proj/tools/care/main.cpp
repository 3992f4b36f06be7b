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

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "care/error.hpp"
#include "care/manifest.hpp"
#include "commands.hpp"

namespace {

using namespace care::cli;

void add_scenario_options(CLI::App* cmd, ScenarioArgs& a) {
  cmd->add_option("--config", a.config, "Scenario config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--manifest", a.manifest, "Re-run the config stored in a manifest.json")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", a.overrides, "Override a config key: key=value (repeatable)")
      ->take_all();
  cmd->add_option("--seed", a.seed, "Root random seed");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{"Content-aware redundancy elimination for DTN situational awareness"};
  app.set_version_flag("--version", std::string(care::artifact_version()));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Paired CARE / non-RE simulation");
  add_scenario_options(simulate, sim.scenario);
  simulate->add_option("--out", sim.out, "Output directory");
  simulate->add_flag("--no-events", sim.no_events, "Skip the per-run event logs");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of paired runs over config values");
  add_scenario_options(sweep_cmd, sweep.scenario);
  sweep_cmd->add_option("--grid", sweep.grid, "Axis key=v1,v2,... (repeatable)")->required();
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seeds: list and/or ranges, e.g. 1-5,9");
  sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (0: one per core)");
  sweep_cmd->add_option("--out", sweep.out, "Output directory");

  ScheduleArgs sched;
  auto* sched_cmd = app.add_subcommand("schedule", "Print the message schedule as CSV");
  add_scenario_options(sched_cmd, sched.scenario);

  MapArgs map;
  auto* map_cmd = app.add_subcommand("gen-map", "Print the scenario road map");
  add_scenario_options(map_cmd, map.scenario);

  RedundancyArgs red;
  auto* red_cmd = app.add_subcommand("redundancy", "Set-cover redundancy of labeled items");
  red_cmd->add_option("--labels", red.labels, "item_a,item_b,score1,...")
      ->required()
      ->check(CLI::ExistingFile);
  red_cmd->add_option("--items", red.items, "Item list, one per line")->check(CLI::ExistingFile);
  red_cmd->add_option("--format", red.format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));
  red_cmd->add_option("--exact-limit", red.exact_limit, "Largest item count solved exactly");

  RocArgs roc;
  auto* roc_cmd = app.add_subcommand("roc", "ROC sweep or threshold calibration");
  roc_cmd->add_option("--scores", roc.scores, "item_a,item_b,score")
      ->required()
      ->check(CLI::ExistingFile);
  roc_cmd->add_option("--labels", roc.labels, "item_a,item_b,label (0/1)")
      ->required()
      ->check(CLI::ExistingFile);
  roc_cmd->add_flag("--lower-is-similar", roc.lower_is_similar, "Smaller scores mean similar");
  roc_cmd->add_option("--target-fp", roc.target_fp, "Calibrate: max FP rate");
  roc_cmd->add_option("--target-fn", roc.target_fn, "Calibrate: max FN rate");

  PipelineArgs pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Per-method and pipeline FP/FN/cost table");
  pipe_cmd->add_option("--labels", pipe.labels, "item_a,item_b,label (0/1)")
      ->required()
      ->check(CLI::ExistingFile);
  pipe_cmd->add_option("--metadata", pipe.metadata, "item_id,lat,lon,timestamp")
      ->check(CLI::ExistingFile);
  pipe_cmd->add_option("--phash", pipe.phash, "item_id,hash")->check(CLI::ExistingFile);
  pipe_cmd->add_option("--gist", pipe.gist, "item_id,v1,...,vk")->check(CLI::ExistingFile);
  pipe_cmd->add_option("--sift", pipe.sift, "item_a,item_b,m,m_prime")->check(CLI::ExistingFile);
  pipe_cmd->add_option("--t-gist", pipe.t_gist, "GIST threshold (default: calibrate)");
  pipe_cmd->add_option("--t-phash", pipe.t_phash, "pHash threshold (default: calibrate)");
  pipe_cmd->add_option("--t-sift", pipe.t_sift, "SIFT threshold (default: calibrate)");
  pipe_cmd->add_option("--target-fn-gist", pipe.target_fn_gist, "GIST calibration FN target");
  pipe_cmd->add_option("--target-fp-phash", pipe.target_fp_phash, "pHash calibration FP target");
  pipe_cmd->add_option("--target-fp-sift", pipe.target_fp_sift, "SIFT calibration FP target");
  pipe_cmd->add_option("--max-distance", pipe.max_distance, "Metadata gate distance (m)");
  pipe_cmd->add_option("--max-age", pipe.max_age, "Metadata gate age (s)");
  pipe_cmd->add_option("--cost-phash", pipe.c_phash, "Normalized pHash cost");
  pipe_cmd->add_option("--cost-gist", pipe.c_gist, "Normalized GIST cost");
  pipe_cmd->add_option("--cost-sift", pipe.c_sift, "Normalized SIFT cost");
  pipe_cmd->add_flag("--gist-uncertain", pipe.gist_uncertain,
                     "Replace GIST by a stage that never decides");
  pipe_cmd->add_option("--format", pipe.format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));

  PhashArgs ph;
  auto* ph_cmd = app.add_subcommand("phash", "64-bit DCT hashes of PGM images");
  ph_cmd->add_option("images", ph.images, "P5 PGM files")->required()->check(CLI::ExistingFile);
  ph_cmd->add_flag("--pairwise", ph.pairwise, "Print Hamming distance for every pair");

  ChunkArgs ch;
  auto* ch_cmd = app.add_subcommand("chunk", "Fixed-size chunk dedup ratio over files");
  ch_cmd->add_option("files", ch.files, "Input files, in stream order")
      ->required()
      ->check(CLI::ExistingFile);
  ch_cmd->add_option("--chunk-size", ch.chunk_size, "Chunk size in bytes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(sim, args);
    if (*sweep_cmd) return cmd_sweep(sweep, args);
    if (*sched_cmd) return cmd_schedule(sched);
    if (*map_cmd) return cmd_gen_map(map);
    if (*red_cmd) return cmd_redundancy(red);
    if (*roc_cmd) return cmd_roc(roc);
    if (*pipe_cmd) return cmd_pipeline(pipe);
    if (*ph_cmd) return cmd_phash(ph);
    if (*ch_cmd) return cmd_chunk(ch);
  } catch (const care::InvalidInput& e) {
    std::cerr << "care: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "care: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
