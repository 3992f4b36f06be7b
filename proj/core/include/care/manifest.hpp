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

// Run manifest: what was run, with which inputs, producing which files.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "care/config.hpp"

namespace care {

std::string_view artifact_version();

struct RunManifest {
  std::string command;                 // subcommand name
  std::vector<std::string> arguments;  // argv after the program name
  std::optional<ScenarioConfig> config;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;    // paths relative to the output dir
  double wall_seconds = 0.0;
};

std::string manifest_json(const RunManifest& m);

/// Writes to a temporary sibling and renames it into place, so readers never
/// see a partial manifest.
void write_manifest_atomic(const std::filesystem::path& path, const RunManifest& m);

/// The config snapshot stored in a manifest file.
ScenarioConfig read_manifest_config(const std::filesystem::path& path);

}  // namespace care
