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

#include "care/mobility.hpp"

#include <fmt/format.h>

#include "care/error.hpp"

namespace care {

namespace {

Point interpolate(const MapGraph& g, const MobilityState& s) {
  const Point a = g.position(s.path[s.leg]);
  if (s.leg + 1 >= s.path.size() || s.progress <= 0.0) return a;
  const Point b = g.position(s.path[s.leg + 1]);
  const double len = *g.edge_length(s.path[s.leg], s.path[s.leg + 1]);
  const double f = std::min(1.0, s.progress / len);
  return {a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
}

void start_path(MobilityState& s, std::vector<VertexId> path, double speed, Trip trip) {
  s.path = std::move(path);
  s.leg = 0;
  s.progress = 0.0;
  s.speed = speed;
  s.trip = trip;
  s.phase = Phase::kMoving;
  s.phase_timer = 0.0;
}

void pedestrian_decide(MobilityState& s, const ScenarioMap& map, const ScenarioConfig& cfg,
                       Rng& rng) {
  const VertexId here = s.vertex();
  const VertexId dest = map.destinations[rng.index(map.destinations.size())];
  const double speed = rng.uniform(cfg.pedestrian_speed.min, cfg.pedestrian_speed.max);
  start_path(s, shortest_path(map.graph, here, dest, map.in_region), speed, Trip::kRegion);
}

void vehicle_decide(MobilityState& s, const ScenarioMap& map, const ScenarioConfig& cfg,
                    Rng& rng) {
  const VertexId here = s.vertex();
  const Trip trip = draw_vehicle_trip(cfg.pr_disaster, rng);
  const VertexId dest = trip == Trip::kRegion
                            ? map.region_vertices[rng.index(map.region_vertices.size())]
                            : map.gateway_vertex;
  const double speed = rng.uniform(cfg.vehicle_speed.min, cfg.vehicle_speed.max);
  start_path(s, shortest_path(map.graph, here, dest), speed, trip);
}

// Runs the move/pause cycle for dt seconds. `decide` starts a new path when a
// pause ends; `pause_for` gives the pause length on arrival.
template <typename Decide, typename PauseFor>
void advance(MobilityState& s, const ScenarioMap& map, double dt, Decide decide,
             PauseFor pause_for) {
  if (!(dt > 0.0)) throw InvalidInput(fmt::format("mobility: dt must be > 0, got {}", dt));
  double budget = dt;
  while (budget > 0.0) {
    if (s.phase == Phase::kPaused) {
      const double use = std::min(budget, s.phase_timer);
      s.phase_timer -= use;
      budget -= use;
      if (s.phase_timer > 0.0) break;
      decide(s);
      continue;
    }
    while (budget > 0.0 && s.leg + 1 < s.path.size()) {
      const double len = *map.graph.edge_length(s.path[s.leg], s.path[s.leg + 1]);
      const double need = (len - s.progress) / s.speed;
      if (need <= budget) {
        budget -= need;
        ++s.leg;
        s.progress = 0.0;
      } else {
        s.progress += s.speed * budget;
        budget = 0.0;
      }
    }
    if (s.leg + 1 >= s.path.size()) {
      s.phase = Phase::kPaused;
      s.phase_timer = pause_for(s);
    }
  }
  s.position = interpolate(map.graph, s);
}

}  // namespace

Trip draw_vehicle_trip(double pr_disaster, Rng& rng) {
  return rng.bernoulli(pr_disaster) ? Trip::kRegion : Trip::kGateway;
}

MobilityState init_pedestrian(NodeId id, const ScenarioMap& map, const ScenarioConfig& cfg,
                              Rng& rng) {
  if (map.region_vertices.empty() || map.destinations.empty()) {
    throw InvalidInput("mobility: map has no region vertices");
  }
  MobilityState s;
  s.node_id = id;
  s.role = Role::kPerson;
  s.path = {map.region_vertices[rng.index(map.region_vertices.size())]};
  pedestrian_decide(s, map, cfg, rng);
  s.position = interpolate(map.graph, s);
  return s;
}

MobilityState init_vehicle(NodeId id, const ScenarioMap& map, const ScenarioConfig& cfg,
                           Rng& rng) {
  MobilityState s;
  s.node_id = id;
  s.role = Role::kVehicle;
  s.path = {map.gateway_vertex};
  vehicle_decide(s, map, cfg, rng);
  s.position = interpolate(map.graph, s);
  return s;
}

MobilityState init_static(NodeId id, Role role, const ScenarioMap& map, VertexId at) {
  MobilityState s;
  s.node_id = id;
  s.role = role;
  s.path = {at};
  s.position = map.graph.position(at);
  return s;
}

void pedestrian_tick(MobilityState& s, const ScenarioMap& map, const ScenarioConfig& cfg,
                     Rng& rng, double dt) {
  advance(
      s, map, dt, [&](MobilityState& st) { pedestrian_decide(st, map, cfg, rng); },
      [&](const MobilityState&) { return cfg.pedestrian_pause; });
}

void vehicle_tick(MobilityState& s, const ScenarioMap& map, const ScenarioConfig& cfg, Rng& rng,
                  double dt) {
  advance(
      s, map, dt, [&](MobilityState& st) { vehicle_decide(st, map, cfg, rng); },
      [&](const MobilityState& st) {
        return st.trip == Trip::kGateway ? cfg.gateway_dwell
                                         : rng.uniform(cfg.vehicle_wait.min, cfg.vehicle_wait.max);
      });
}

}  // namespace care
