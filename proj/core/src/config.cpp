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

#include "care/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "care/error.hpp"
#include "json.hpp"

namespace care {

using Json = nlohmann::ordered_json;

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kPerson:
      return "person";
    case Role::kVehicle:
      return "vehicle";
    case Role::kGateway:
      return "gateway";
  }
  return "?";
}

std::int64_t message_count(const ScenarioConfig& cfg) {
  if (!(cfg.gen_interval_G > 0) || !(cfg.duration_T > 0)) return 0;
  return static_cast<std::int64_t>(std::floor(cfg.duration_T / cfg.gen_interval_G));
}

Bytes derive_people_buffer(const ScenarioConfig& cfg) {
  const auto n = message_count(cfg);
  if (n <= 0) {
    throw InvalidInput("derive_people_buffer: floor(T/G) is 0, no messages are generated");
  }
  const double r = cfg.target_redundancy_Rsim;
  if (!(r >= 0.0 && r < 1.0)) {
    throw InvalidInput("derive_people_buffer: target_redundancy_Rsim must be in [0,1)");
  }
  const double bytes = static_cast<double>(cfg.message_size) * (1.0 - r) * static_cast<double>(n);
  return static_cast<Bytes>(std::llround(bytes));
}

Bytes people_buffer_capacity(const ScenarioConfig& cfg) {
  return cfg.buffer_mode == BufferMode::kFormula ? derive_people_buffer(cfg) : cfg.people_buffer;
}

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }
bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::vector<ConfigIssue> validate_config(const ScenarioConfig& cfg) {
  std::vector<ConfigIssue> issues;
  auto fail = [&](std::string field, std::string msg) {
    issues.push_back({std::move(field), std::move(msg)});
  };

  if (!positive(cfg.duration_T)) fail("duration_T", "must be > 0");
  if (!positive(cfg.gen_interval_G)) fail("gen_interval_G", "must be > 0");
  if (positive(cfg.duration_T) && positive(cfg.gen_interval_G) && message_count(cfg) < 1) {
    fail("gen_interval_G", "must fit into duration_T at least once");
  }
  if (!(cfg.target_redundancy_Rsim >= 0.0 && cfg.target_redundancy_Rsim < 1.0)) {
    fail("target_redundancy_Rsim", "must be in [0,1)");
  }
  if (!(cfg.window_W >= 0.0) || !std::isfinite(cfg.window_W)) fail("window_W", "must be >= 0");
  if (cfg.n_people < 1) fail("n_people", "must be >= 1");
  if (!is_probability(cfg.pr_disaster)) fail("pr_disaster", "must be a probability in [0,1]");
  if (!is_probability(cfg.detector_fp)) fail("detector_fp", "must be a probability in [0,1]");
  if (!is_probability(cfg.detector_fn)) fail("detector_fn", "must be a probability in [0,1]");

  auto check_range = [&](const char* field, Range r, bool allow_zero) {
    if (r.empty()) {
      fail(field, fmt::format("empty range [{}, {}]", r.min, r.max));
    } else if (allow_zero ? !(r.min >= 0.0) : !(r.min > 0.0)) {
      fail(field, "lower bound must be positive");
    } else if (!std::isfinite(r.max)) {
      fail(field, "upper bound must be finite");
    }
  };
  check_range("pedestrian_speed", cfg.pedestrian_speed, false);
  check_range("vehicle_speed", cfg.vehicle_speed, false);
  check_range("vehicle_wait", cfg.vehicle_wait, false);
  if (!positive(cfg.pedestrian_pause)) fail("pedestrian_pause", "must be > 0");
  if (!positive(cfg.gateway_dwell)) fail("gateway_dwell", "must be > 0");

  if (!positive(cfg.person_range)) fail("person_range", "must be > 0");
  if (!positive(cfg.vehicle_range)) fail("vehicle_range", "must be > 0");
  if (!positive(cfg.gateway_range)) fail("gateway_range", "must be > 0");
  if (!positive(cfg.person_rate)) fail("person_rate", "must be > 0");
  if (!positive(cfg.vehicle_rate)) fail("vehicle_rate", "must be > 0");
  if (!positive(cfg.gateway_rate)) fail("gateway_rate", "must be > 0");

  if (cfg.message_size == 0) fail("message_size", "must be > 0");
  if (cfg.rescue_buffer == 0) fail("rescue_buffer", "must be > 0");
  if (cfg.buffer_mode == BufferMode::kExplicit && cfg.people_buffer == 0) {
    fail("people_buffer", "must be > 0 in explicit buffer mode");
  }
  if (!positive(cfg.dt)) fail("dt", "must be > 0");
  if (cfg.map_source.empty()) fail("map_source", "must be 'grid' or a file path");
  if (cfg.map_source == "grid" && !positive(cfg.map_spacing)) fail("map_spacing", "must be > 0");
  if (cfg.poi_count < 0) fail("poi_count", "must be >= 0");
  const Rect& r = cfg.disaster_region;
  if (!(r.x_min < r.x_max && r.y_min < r.y_max)) {
    fail("disaster_region", "must have x_min < x_max and y_min < y_max");
  }
  if (!std::isfinite(cfg.gateway_position.x) || !std::isfinite(cfg.gateway_position.y)) {
    fail("gateway_position", "must be finite");
  } else if (r.contains(cfg.gateway_position)) {
    fail("gateway_position", "must lie outside disaster_region");
  }
  return issues;
}

void require_valid(const ScenarioConfig& cfg) {
  auto issues = validate_config(cfg);
  if (issues.empty()) return;
  std::string msg = "invalid config:";
  for (const auto& i : issues) msg += fmt::format("\n  {}: {}", i.field, i.message);
  throw InvalidInput(msg);
}

namespace {

// Speeds are kept in m/s internally; rounding the km/h view to nine
// decimals keeps `3 km/h` printing as 3 after the round trip.
double to_kmh(double mps) { return std::round(mps / kKmhToMps * 1e9) / 1e9; }

Json range_json(Range r) { return Json::array({r.min, r.max}); }

const char* buffer_mode_name(BufferMode m) {
  return m == BufferMode::kFormula ? "formula" : "explicit";
}
const char* owner_mode_name(OwnerMode m) {
  return m == OwnerMode::kRandom ? "random" : "same_as_seed";
}
const char* detector_kind_name(DetectorKind k) {
  return k == DetectorKind::kOracle ? "oracle" : "never";
}

Json to_json(const ScenarioConfig& c) {
  Json j;
  j["duration_T"] = c.duration_T;
  j["gen_interval_G"] = c.gen_interval_G;
  j["target_redundancy_Rsim"] = c.target_redundancy_Rsim;
  j["window_W"] = c.window_W;
  j["n_people"] = c.n_people;
  j["pr_disaster"] = c.pr_disaster;
  j["pedestrian_speed"] = Json::array({to_kmh(c.pedestrian_speed.min), to_kmh(c.pedestrian_speed.max)});
  j["pedestrian_pause"] = c.pedestrian_pause;
  j["vehicle_speed"] = Json::array({to_kmh(c.vehicle_speed.min), to_kmh(c.vehicle_speed.max)});
  j["vehicle_wait"] = range_json(c.vehicle_wait);
  j["gateway_dwell"] = c.gateway_dwell;
  j["person_range"] = c.person_range;
  j["person_rate"] = c.person_rate;
  j["vehicle_range"] = c.vehicle_range;
  j["vehicle_rate"] = c.vehicle_rate;
  j["gateway_range"] = c.gateway_range;
  j["gateway_rate"] = c.gateway_rate;
  j["detector_kind"] = detector_kind_name(c.detector_kind);
  j["detector_fp"] = c.detector_fp;
  j["detector_fn"] = c.detector_fn;
  j["buffer_mode"] = buffer_mode_name(c.buffer_mode);
  j["people_buffer"] = c.people_buffer;
  j["rescue_buffer"] = c.rescue_buffer;
  j["message_size"] = c.message_size;
  j["owner_mode"] = owner_mode_name(c.owner_mode);
  j["rng_seed"] = c.rng_seed;
  j["map_source"] = c.map_source;
  j["map_spacing"] = c.map_spacing;
  j["poi_count"] = c.poi_count;
  const Rect& r = c.disaster_region;
  j["disaster_region"] = Json::array({r.x_min, r.y_min, r.x_max, r.y_max});
  j["gateway_position"] = Json::array({c.gateway_position.x, c.gateway_position.y});
  j["dt"] = c.dt;
  j["schedule_file"] = c.schedule_file;
  return j;
}

double get_number(const Json& v, std::string_view key) {
  if (!v.is_number()) throw InvalidInput(fmt::format("config: '{}' must be a number", key));
  return v.get<double>();
}

template <typename Int>
Int get_integer(const Json& v, std::string_view key) {
  if (!v.is_number_integer() && !(v.is_number_float() && std::floor(v.get<double>()) == v.get<double>())) {
    throw InvalidInput(fmt::format("config: '{}' must be an integer", key));
  }
  if constexpr (std::is_unsigned_v<Int>) {
    if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
      throw InvalidInput(fmt::format("config: '{}' must be non-negative", key));
    }
    if (v.is_number_float() && v.get<double>() < 0) {
      throw InvalidInput(fmt::format("config: '{}' must be non-negative", key));
    }
  }
  return v.is_number_float() ? static_cast<Int>(v.get<double>()) : v.get<Int>();
}

std::vector<double> get_numbers(const Json& v, std::string_view key, std::size_t n) {
  if (!v.is_array() || v.size() != n) {
    throw InvalidInput(fmt::format("config: '{}' must be an array of {} numbers", key, n));
  }
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_number(e, key));
  return out;
}

std::string get_string(const Json& v, std::string_view key) {
  if (!v.is_string()) throw InvalidInput(fmt::format("config: '{}' must be a string", key));
  return v.get<std::string>();
}

void apply_field(ScenarioConfig& c, const std::string& key, const Json& v) {
  auto range = [&](double scale) {
    auto xs = get_numbers(v, key, 2);
    return Range{xs[0] * scale, xs[1] * scale};
  };
  if (key == "duration_T") {
    c.duration_T = get_number(v, key);
  } else if (key == "gen_interval_G") {
    c.gen_interval_G = get_number(v, key);
  } else if (key == "target_redundancy_Rsim") {
    c.target_redundancy_Rsim = get_number(v, key);
  } else if (key == "window_W") {
    c.window_W = get_number(v, key);
  } else if (key == "n_people") {
    c.n_people = get_integer<int>(v, key);
  } else if (key == "pr_disaster") {
    c.pr_disaster = get_number(v, key);
  } else if (key == "pedestrian_speed") {
    c.pedestrian_speed = range(kKmhToMps);
  } else if (key == "pedestrian_pause") {
    c.pedestrian_pause = get_number(v, key);
  } else if (key == "vehicle_speed") {
    c.vehicle_speed = range(kKmhToMps);
  } else if (key == "vehicle_wait") {
    c.vehicle_wait = range(1.0);
  } else if (key == "gateway_dwell") {
    c.gateway_dwell = get_number(v, key);
  } else if (key == "person_range") {
    c.person_range = get_number(v, key);
  } else if (key == "person_rate") {
    c.person_rate = get_number(v, key);
  } else if (key == "vehicle_range") {
    c.vehicle_range = get_number(v, key);
  } else if (key == "vehicle_rate") {
    c.vehicle_rate = get_number(v, key);
  } else if (key == "gateway_range") {
    c.gateway_range = get_number(v, key);
  } else if (key == "gateway_rate") {
    c.gateway_rate = get_number(v, key);
  } else if (key == "detector_kind") {
    auto s = get_string(v, key);
    if (s == "oracle") {
      c.detector_kind = DetectorKind::kOracle;
    } else if (s == "never") {
      c.detector_kind = DetectorKind::kNeverSimilar;
    } else {
      throw InvalidInput("config: detector_kind must be 'oracle' or 'never'");
    }
  } else if (key == "detector_fp") {
    c.detector_fp = get_number(v, key);
  } else if (key == "detector_fn") {
    c.detector_fn = get_number(v, key);
  } else if (key == "buffer_mode") {
    auto s = get_string(v, key);
    if (s == "formula") {
      c.buffer_mode = BufferMode::kFormula;
    } else if (s == "explicit") {
      c.buffer_mode = BufferMode::kExplicit;
    } else {
      throw InvalidInput("config: buffer_mode must be 'formula' or 'explicit'");
    }
  } else if (key == "people_buffer") {
    c.people_buffer = get_integer<Bytes>(v, key);
  } else if (key == "rescue_buffer") {
    c.rescue_buffer = get_integer<Bytes>(v, key);
  } else if (key == "message_size") {
    c.message_size = get_integer<Bytes>(v, key);
  } else if (key == "owner_mode") {
    auto s = get_string(v, key);
    if (s == "random") {
      c.owner_mode = OwnerMode::kRandom;
    } else if (s == "same_as_seed") {
      c.owner_mode = OwnerMode::kSameAsSeed;
    } else {
      throw InvalidInput("config: owner_mode must be 'random' or 'same_as_seed'");
    }
  } else if (key == "rng_seed") {
    c.rng_seed = get_integer<std::uint64_t>(v, key);
  } else if (key == "map_source") {
    c.map_source = get_string(v, key);
  } else if (key == "map_spacing") {
    c.map_spacing = get_number(v, key);
  } else if (key == "poi_count") {
    c.poi_count = get_integer<int>(v, key);
  } else if (key == "disaster_region") {
    auto xs = get_numbers(v, key, 4);
    c.disaster_region = Rect{xs[0], xs[1], xs[2], xs[3]};
  } else if (key == "gateway_position") {
    auto xs = get_numbers(v, key, 2);
    c.gateway_position = Point{xs[0], xs[1]};
  } else if (key == "dt") {
    c.dt = get_number(v, key);
  } else if (key == "schedule_file") {
    c.schedule_file = get_string(v, key);
  } else {
    throw InvalidInput(fmt::format("config: unknown field '{}'", key));
  }
}

}  // namespace

std::string to_canonical_json(const ScenarioConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

ScenarioConfig config_from_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(fmt::format("config: malformed JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw InvalidInput("config: top level must be an object");
  ScenarioConfig cfg;
  for (const auto& [key, value] : doc.items()) apply_field(cfg, key, value);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

void apply_override(ScenarioConfig& cfg, std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw InvalidInput(fmt::format("override '{}' must have the form path=value", assignment));
  }
  std::string key(assignment.substr(0, eq));
  std::string_view raw = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(raw.begin(), raw.end());
  } catch (const nlohmann::json::parse_error&) {
    value = std::string(raw);
  }
  apply_field(cfg, key, value);
}

std::vector<NodeSpec> build_node_specs(const ScenarioConfig& cfg) {
  std::vector<NodeSpec> specs;
  const Bytes people = people_buffer_capacity(cfg);
  for (int i = 0; i < cfg.n_people; ++i) {
    specs.push_back({i, Role::kPerson, cfg.person_range, cfg.person_rate, people});
  }
  specs.push_back({vehicle_id(cfg), Role::kVehicle, cfg.vehicle_range, cfg.vehicle_rate, cfg.rescue_buffer});
  specs.push_back({gateway_id(cfg), Role::kGateway, cfg.gateway_range, cfg.gateway_rate,
                   std::numeric_limits<Bytes>::max()});
  return specs;
}

}  // namespace care
