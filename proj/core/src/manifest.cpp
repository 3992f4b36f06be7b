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

#include "care/manifest.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "care/error.hpp"
#include "json.hpp"

#ifndef CARE_VERSION
#define CARE_VERSION "0.0.0"
#endif

namespace care {

using Json = nlohmann::ordered_json;

std::string_view artifact_version() { return CARE_VERSION; }

std::string manifest_json(const RunManifest& m) {
  Json j;
  j["artifact_version"] = artifact_version();
  j["command"] = m.command;
  j["arguments"] = m.arguments;
  j["seed"] = m.seed;
  j["config"] = m.config ? Json::parse(to_canonical_json(*m.config)) : Json(nullptr);
  j["outputs"] = m.outputs;
  j["wall_seconds"] = m.wall_seconds;
  return j.dump(2) + "\n";
}

void write_manifest_atomic(const std::filesystem::path& path, const RunManifest& m) {
  const std::string text = manifest_json(m);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", tmp.string()));
    out << text;
    out.flush();
    if (!out) throw IoError(fmt::format("short write to '{}'", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError(fmt::format("cannot move '{}' into place: {}", path.string(), ec.message()));
  }
}

ScenarioConfig read_manifest_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open manifest '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  Json j;
  try {
    j = Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw InvalidInput(fmt::format("manifest '{}': {}", path.string(), e.what()));
  }
  if (!j.is_object() || !j.contains("config") || !j["config"].is_object()) {
    throw InvalidInput(fmt::format("manifest '{}' has no config snapshot", path.string()));
  }
  return config_from_json(j["config"].dump());
}

}  // namespace care
