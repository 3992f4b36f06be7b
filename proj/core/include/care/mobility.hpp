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

// Pedestrian and rescue-vehicle movement on the road graph.
//
// Both roles alternate between moving along a shortest path and pausing at
// its end. Time left over when a phase ends inside a tick is spent in the
// next phase, so trajectories do not depend on where tick boundaries fall.

#pragma once

#include <cstddef>
#include <vector>

#include "care/config.hpp"
#include "care/map_graph.hpp"
#include "care/rng.hpp"

namespace care {

enum class Phase { kMoving, kPaused };
enum class Trip { kNone, kRegion, kGateway };

struct MobilityState {
  NodeId node_id = 0;
  Role role = Role::kPerson;
  Point position;
  std::vector<VertexId> path;
  std::size_t leg = 0;       // path[leg] -> path[leg + 1] is the current edge
  double progress = 0.0;     // meters along the current edge
  Phase phase = Phase::kPaused;
  double phase_timer = 0.0;  // seconds of pause left
  double speed = 0.0;        // m/s for the current path
  Trip trip = Trip::kNone;   // what the current path leads to

  VertexId vertex() const { return path.empty() ? -1 : path[leg]; }
};

/// A person at a uniform-random region vertex, already heading to its first
/// destination.
MobilityState init_pedestrian(NodeId id, const ScenarioMap& map, const ScenarioConfig& cfg,
                              Rng& rng);

/// The vehicle at the gateway vertex, having made its first decision.
MobilityState init_vehicle(NodeId id, const ScenarioMap& map, const ScenarioConfig& cfg,
                           Rng& rng);

/// A node that never moves.
MobilityState init_static(NodeId id, Role role, const ScenarioMap& map, VertexId at);

/// Advances a person by dt seconds: walk at the leg speed, pause on arrival,
/// then pick a uniform destination (point of interest) and a fresh speed.
void pedestrian_tick(MobilityState& s, const ScenarioMap& map, const ScenarioConfig& cfg,
                     Rng& rng, double dt);

/// One vehicle decision: kRegion with probability pr_disaster, else kGateway.
Trip draw_vehicle_trip(double pr_disaster, Rng& rng);

/// Advances the vehicle by dt seconds. At each decision it heads to a
/// uniform region vertex with probability pr_disaster, else to the gateway;
/// it waits U(vehicle_wait) at a region destination and gateway_dwell at the
/// gateway.
void vehicle_tick(MobilityState& s, const ScenarioMap& map, const ScenarioConfig& cfg, Rng& rng,
                  double dt);

}  // namespace care
