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

// Scenario parameters, message/node identity types and derived quantities.
//
// Every quantity is stored in SI-ish base units: meters, seconds, bytes and
// bits per second. The on-disk config uses km/h for speeds; conversion
// happens in the parser.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace care {

using NodeId = int;
using MsgId = std::int64_t;
using ClusterId = std::int64_t;
using Bytes = std::uint64_t;

inline constexpr double kKmhToMps = 1000.0 / 3600.0;
inline constexpr double kMetersPerMile = 1609.344;
inline constexpr Bytes kDefaultMessageSize = 300'000;

/// One generated situational-awareness message. Messages sharing a
/// `cluster_id` carry the same semantic content.
struct MessageRecord {
  MsgId msg_id = 0;
  ClusterId cluster_id = 0;
  NodeId owner = 0;
  double created_at = 0.0;  // seconds since simulation start
  Bytes size = kDefaultMessageSize;

  friend bool operator==(const MessageRecord&, const MessageRecord&) = default;
};

enum class Role { kPerson, kVehicle, kGateway };

std::string_view to_string(Role role);

struct NodeSpec {
  NodeId node_id = 0;
  Role role = Role::kPerson;
  double radio_range = 20.0;  // meters
  double link_rate = 10e6;    // bits/second
  Bytes buffer_capacity = 0;
};

struct Range {
  double min = 0.0;
  double max = 0.0;

  bool empty() const { return !(min <= max); }
  double mid() const { return 0.5 * (min + max); }
  friend bool operator==(const Range&, const Range&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle, closed on all sides.
struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class BufferMode { kFormula, kExplicit };
enum class OwnerMode { kRandom, kSameAsSeed };
enum class DetectorKind { kOracle, kNeverSimilar };

struct ScenarioConfig {
  double duration_T = 5 * 3600.0;
  double gen_interval_G = 30.0;
  double target_redundancy_Rsim = 0.3;
  double window_W = 20.0;
  int n_people = 50;
  double pr_disaster = 0.015;

  Range pedestrian_speed{3.0 * kKmhToMps, 7.0 * kKmhToMps};  // m/s
  double pedestrian_pause = 300.0;
  Range vehicle_speed{25.0 * kKmhToMps, 54.0 * kKmhToMps};  // m/s
  Range vehicle_wait{300.0, 600.0};
  double gateway_dwell = 60.0;

  double person_range = 20.0;
  double person_rate = 10e6;
  double vehicle_range = 20.0;
  double vehicle_rate = 100e6;
  double gateway_range = 20.0;
  double gateway_rate = 100e6;

  DetectorKind detector_kind = DetectorKind::kOracle;
  double detector_fp = 0.0;
  double detector_fn = 0.0;

  BufferMode buffer_mode = BufferMode::kFormula;
  Bytes people_buffer = 0;  // used when buffer_mode == kExplicit
  Bytes rescue_buffer = 1'000'000'000;
  Bytes message_size = kDefaultMessageSize;
  OwnerMode owner_mode = OwnerMode::kRandom;

  std::uint64_t rng_seed = 1;
  std::string map_source = "grid";  // "grid" or a map file path
  double map_spacing = 1000.0;
  /// People pick their destinations among this many region vertices,
  /// chosen once per run; 0 means every region vertex. The vehicle always
  /// picks uniformly over the whole region.
  int poi_count = 25;
  Rect disaster_region{0.0, 0.0, 16000.0, 13000.0};
  Point gateway_position{25600.0, 6500.0};
  double dt = 1.0;
  std::string schedule_file;  // empty: generate the workload

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// floor(T / G); zero when no message would be generated.
std::int64_t message_count(const ScenarioConfig& cfg);

/// Buffer that holds exactly the unique messages of a run:
/// round(size * (1 - R_sim) * floor(T / G)).
/// Throws InvalidInput when floor(T/G) == 0 or R_sim is outside [0, 1).
Bytes derive_people_buffer(const ScenarioConfig& cfg);

/// Capacity of a person's buffer under the configured buffer mode.
Bytes people_buffer_capacity(const ScenarioConfig& cfg);

struct ConfigIssue {
  std::string field;
  std::string message;
  friend bool operator==(const ConfigIssue&, const ConfigIssue&) = default;
};

/// Every violated invariant. Empty means valid.
std::vector<ConfigIssue> validate_config(const ScenarioConfig& cfg);

/// Throws InvalidInput listing every issue when the config is invalid.
void require_valid(const ScenarioConfig& cfg);

/// Canonical JSON: fixed key order, stable number formatting. Equal configs
/// serialize to identical bytes.
std::string to_canonical_json(const ScenarioConfig& cfg);

/// Parses the JSON config document. Missing keys keep their defaults;
/// unknown keys are rejected.
ScenarioConfig config_from_json(std::string_view text);

ScenarioConfig load_config(const std::filesystem::path& path);

/// Applies one `path=value` override. The value is parsed as JSON when
/// possible and as a bare string otherwise.
void apply_override(ScenarioConfig& cfg, std::string_view assignment);

/// Node layout of a scenario: people 0..n-1, then the vehicle, then the
/// gateway.
std::vector<NodeSpec> build_node_specs(const ScenarioConfig& cfg);

inline NodeId vehicle_id(const ScenarioConfig& cfg) { return cfg.n_people; }
inline NodeId gateway_id(const ScenarioConfig& cfg) { return cfg.n_people + 1; }

}  // namespace care
