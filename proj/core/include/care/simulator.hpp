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

// Time-stepped DTN engine.
//
// Each tick: contacts are computed from the positions at the tick start,
// transfers and message generation run in continuous time inside the tick,
// then every node moves by dt. A directed link carries one message at a
// time; a transfer is atomic and is lost if the contact breaks first.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string_view>
#include <vector>

#include "care/config.hpp"
#include "care/map_graph.hpp"
#include "care/routing.hpp"
#include "care/workload.hpp"

namespace care {

enum class RouterKind { kEpidemic, kCare };

std::string_view to_string(RouterKind r);

enum class EventType {
  kGen,
  kSend,
  kDeliver,
  kDropCapacity,
  kRejectDup,
  kRejectRedundant,
  kRejectFp,
};

std::string_view to_string(EventType t);

struct LogEvent {
  std::int64_t tick = 0;
  EventType type = EventType::kGen;
  NodeId node = 0;
  MsgId msg_id = 0;
  ClusterId cluster_id = 0;

  friend bool operator==(const LogEvent&, const LogEvent&) = default;
};

struct Delivery {
  double time = 0.0;  // seconds, exact completion time
  std::int64_t tick = 0;
  MsgId msg_id = 0;
  ClusterId cluster_id = 0;
  double created_at = 0.0;
};

struct RunCounters {
  std::size_t generated = 0;
  std::size_t transfers_completed = 0;
  std::size_t transfers_aborted = 0;
  std::size_t drops_capacity = 0;
  std::size_t rejects_dup = 0;
  std::size_t rejects_redundant = 0;
  std::size_t rejects_fp = 0;
  std::size_t contacts = 0;
};

struct RunResult {
  RouterKind router = RouterKind::kEpidemic;
  std::vector<LogEvent> events;
  std::vector<Delivery> deliveries;  // in delivery order
  RunCounters counters;
  std::int64_t ticks = 0;
  double disaster_time_fraction = 0.0;  // share of ticks the vehicle is in the region
  std::vector<std::vector<MessageRecord>> final_buffers;  // per node, queue order
};

/// Admission detector for CARE runs as configured (oracle or never-similar).
/// The oracle draws come from the "detector" sub-stream of cfg.rng_seed.
std::unique_ptr<AdmissionDetector> make_detector(const ScenarioConfig& cfg);

struct SimOptions {
  RouterKind router = RouterKind::kEpidemic;
  /// Used by CARE runs; when null, make_detector(cfg) is used.
  const AdmissionDetector* detector = nullptr;
  bool record_events = true;
};

/// Runs one scenario. Mobility draws come from per-node "mobility"
/// sub-streams of cfg.rng_seed, so two runs with the same config see the
/// same trajectories whatever the router.
RunResult run_simulation(const ScenarioConfig& cfg, const WorkloadSchedule& schedule,
                         const ScenarioMap& map, const SimOptions& opts);

/// tick,event,node,msg_id,cluster_id
void write_event_log_csv(std::ostream& out, const std::vector<LogEvent>& events);

}  // namespace care
