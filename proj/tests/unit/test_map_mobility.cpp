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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "care/config.hpp"
#include "care/contacts.hpp"
#include "care/error.hpp"
#include "care/map_graph.hpp"
#include "care/mobility.hpp"
#include "care/rng.hpp"

namespace care {
namespace {

TEST(GridMap, SmallLattice) {
  MapGraph g = generate_grid_map(100, 100, 100);
  EXPECT_EQ(g.vertex_count(), 4U);
  EXPECT_EQ(g.edge_count(), 4U);
  EXPECT_TRUE(g.is_connected());
  MapGraph h = generate_grid_map(300, 200, 100);
  EXPECT_EQ(h.vertex_count(), 12U);
  EXPECT_EQ(h.edge_count(), 3U * 3 + 4U * 2);
}

TEST(GridMap, RejectsBadSpacing) {
  EXPECT_THROW(generate_grid_map(100, 100, 30), InvalidInput);
  EXPECT_THROW(generate_grid_map(0, 100, 10), InvalidInput);
  EXPECT_THROW(generate_grid_map(100, 100, -10), InvalidInput);
}

TEST(ScenarioMap, DesktopScenarioCorridor) {
  ScenarioConfig cfg;
  cfg.map_spacing = 500;
  ScenarioMap m = build_scenario_map(cfg);
  EXPECT_TRUE(m.graph.is_connected());
  const Point gw = m.graph.position(m.gateway_vertex);
  EXPECT_DOUBLE_EQ(gw.x, cfg.gateway_position.x);
  EXPECT_DOUBLE_EQ(gw.y, cfg.gateway_position.y);
  EXPECT_FALSE(m.in_region[static_cast<std::size_t>(m.gateway_vertex)]);
  const std::size_t lattice = (16000 / 500 + 1) * (13000 / 500 + 1);
  EXPECT_EQ(m.region_vertices.size(), lattice);
  // 9.6 km corridor at 500 m spacing: 20 segments, the last one 100 m.
  EXPECT_EQ(m.graph.vertex_count(), lattice + 20);
  std::vector<VertexId> p = shortest_path(m.graph, 0, m.gateway_vertex);
  EXPECT_NEAR(path_length(m.graph, p), 16000 + 6500 + 9600, 1e-6);
}

TEST(ScenarioMap, PointsOfInterest) {
  ScenarioConfig cfg;
  cfg.poi_count = 7;
  ScenarioMap a = build_scenario_map(cfg);
  ScenarioMap b = build_scenario_map(cfg);
  ASSERT_EQ(a.destinations.size(), 7U);
  EXPECT_EQ(a.destinations, b.destinations);
  EXPECT_TRUE(std::is_sorted(a.destinations.begin(), a.destinations.end()));
  for (VertexId v : a.destinations) EXPECT_TRUE(a.in_region[static_cast<std::size_t>(v)]);
  cfg.rng_seed = 2;
  EXPECT_NE(build_scenario_map(cfg).destinations, a.destinations);
  cfg.poi_count = 0;
  EXPECT_EQ(build_scenario_map(cfg).destinations, a.region_vertices);
}

// Floyd-Warshall distances as the shortest-path oracle.
std::vector<std::vector<double>> all_pairs(const MapGraph& g) {
  const std::size_t n = g.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const MapEdge& e : g.edges()) {
    d[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)] = e.length;
    d[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.a)] = e.length;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

MapGraph random_graph(Rng& rng, std::size_t n) {
  MapGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex({rng.uniform(0, 100), rng.uniform(0, 100)});
  for (std::size_t i = 1; i < n; ++i) {
    const auto j = static_cast<VertexId>(rng.index(i));
    g.add_straight_edge(j, static_cast<VertexId>(i));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto a = static_cast<VertexId>(rng.index(n));
    const auto b = static_cast<VertexId>(rng.index(n));
    if (a != b && !g.edge_length(a, b)) {
      const Point pa = g.position(a);
      const Point pb = g.position(b);
      g.add_edge(a, b, std::hypot(pa.x - pb.x, pa.y - pb.y) * rng.uniform(1.0, 1.5));
    }
  }
  return g;
}

TEST(ShortestPath, LengthsMatchFloydWarshall) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    MapGraph g = random_graph(rng, 25);
    auto d = all_pairs(g);
    for (int q = 0; q < 30; ++q) {
      const auto a = static_cast<VertexId>(rng.index(25));
      const auto b = static_cast<VertexId>(rng.index(25));
      std::vector<VertexId> p = shortest_path(g, a, b);
      EXPECT_EQ(p.front(), a);
      EXPECT_EQ(p.back(), b);
      EXPECT_NEAR(path_length(g, p), d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
                  1e-9);
    }
  }
}

TEST(ShortestPath, EqualLengthTieGoesToSmallestSequence) {
  // Unit square: 0-1-3 and 0-2-3 both have length 2.
  MapGraph g = generate_grid_map(1, 1, 1);
  EXPECT_EQ(shortest_path(g, 0, 3), (std::vector<VertexId>{0, 1, 3}));
  EXPECT_EQ(shortest_path(g, 3, 0), (std::vector<VertexId>{3, 1, 0}));
  EXPECT_EQ(shortest_path(g, 2, 2), (std::vector<VertexId>{2}));
}

TEST(ShortestPath, AllowedSubsetAndErrors) {
  MapGraph g = generate_grid_map(2, 1, 1);  // 0 1 2 / 3 4 5
  std::vector<char> allowed = {1, 0, 1, 1, 1, 1};
  EXPECT_EQ(shortest_path(g, 0, 2, allowed), (std::vector<VertexId>{0, 3, 4, 5, 2}));
  EXPECT_THROW(shortest_path(g, 0, 1, allowed), InvalidInput);
  EXPECT_THROW(shortest_path(g, 0, 9), InvalidInput);
  MapGraph split;
  split.add_vertex({0, 0});
  split.add_vertex({1, 0});
  EXPECT_THROW(shortest_path(split, 0, 1), InvalidInput);
}

TEST(MapGraph, EdgeValidation) {
  MapGraph g;
  g.add_vertex({0, 0});
  g.add_vertex({3, 4});
  EXPECT_THROW(g.add_edge(0, 0, 1.0), InvalidInput);
  EXPECT_THROW(g.add_edge(0, 1, 4.9), InvalidInput);
  EXPECT_THROW(g.add_edge(0, 2, 10.0), InvalidInput);
  g.add_edge(0, 1, 7.0);
  EXPECT_THROW(g.add_edge(1, 0, 7.0), InvalidInput);
  EXPECT_EQ(*g.edge_length(1, 0), 7.0);
  EXPECT_EQ(g.nearest_vertex({2.9, 3.9}), 1);
}

TEST(MapFile, RoundTrip) {
  Rng rng(22);
  MapGraph g = random_graph(rng, 12);
  std::ostringstream out;
  write_map(out, g);
  MapGraph back = parse_map(out.str());
  ASSERT_EQ(back.vertex_count(), g.vertex_count());
  ASSERT_EQ(back.edge_count(), g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    EXPECT_EQ(back.edges()[i].a, g.edges()[i].a);
    EXPECT_DOUBLE_EQ(back.edges()[i].length, g.edges()[i].length);
  }
  EXPECT_THROW(parse_map("vertices 1\n0 0 0\nedges 1\n0 5 1\n"), InvalidInput);
  EXPECT_THROW(parse_map("vertices 2\n0 0 0\n"), InvalidInput);
  MapGraph c = parse_map("# tiny\nvertices 2\n0 0 0\n1 10 0\n\nedges 1\n0 1 10\n");
  EXPECT_EQ(c.edge_count(), 1U);
}

// ---- mobility ---------------------------------------------------------------

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.disaster_region = {0, 0, 2000, 1500};
  cfg.gateway_position = {3000, 750};
  cfg.map_spacing = 250;
  cfg.pedestrian_pause = 30;
  cfg.vehicle_wait = {20, 40};
  cfg.gateway_dwell = 15;
  return cfg;
}

// Distance from p to the nearest map edge.
double distance_to_map(const MapGraph& g, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const MapEdge& e : g.edges()) {
    const Point a = g.position(e.a);
    const Point b = g.position(e.b);
    const double dx = b.x - a.x, dy = b.y - a.y;
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(a.x + t * dx - p.x, a.y + t * dy - p.y));
  }
  return best;
}

TEST(Mobility, PedestriansStayInRegionAndOnRoads) {
  ScenarioConfig cfg = small_config();
  ScenarioMap map = build_scenario_map(cfg);
  for (NodeId id = 0; id < 5; ++id) {
    Rng rng(cfg.rng_seed, "mobility", static_cast<std::uint64_t>(id));
    MobilityState s = init_pedestrian(id, map, cfg, rng);
    for (int t = 0; t < 3000; ++t) {
      pedestrian_tick(s, map, cfg, rng, 1.0);
      ASSERT_TRUE(cfg.disaster_region.contains(s.position));
      if (t % 97 == 0) { ASSERT_LT(distance_to_map(map.graph, s.position), 1e-6); }
      for (VertexId v : s.path) ASSERT_TRUE(map.in_region[static_cast<std::size_t>(v)]);
    }
  }
}

TEST(Mobility, PedestrianSpeedWithinBounds) {
  ScenarioConfig cfg = small_config();
  cfg.pedestrian_pause = 1e-3;
  ScenarioMap map = build_scenario_map(cfg);
  Rng rng(5);
  MobilityState s = init_pedestrian(0, map, cfg, rng);
  for (int t = 0; t < 2000; ++t) {
    const Point before = s.position;
    pedestrian_tick(s, map, cfg, rng, 1.0);
    EXPECT_LE(std::hypot(s.position.x - before.x, s.position.y - before.y),
              cfg.pedestrian_speed.max + 1e-9);
    EXPECT_GE(s.speed, cfg.pedestrian_speed.min);
    EXPECT_LE(s.speed, cfg.pedestrian_speed.max);
  }
}

TEST(Mobility, TickSizeDoesNotChangeTrajectory) {
  ScenarioConfig cfg = small_config();
  ScenarioMap map = build_scenario_map(cfg);
  Rng r1(9);
  Rng r2(9);
  MobilityState a = init_pedestrian(0, map, cfg, r1);
  MobilityState b = init_pedestrian(0, map, cfg, r2);
  for (int t = 0; t < 4000; ++t) {
    pedestrian_tick(a, map, cfg, r1, 1.0);
    pedestrian_tick(b, map, cfg, r2, 0.5);
    pedestrian_tick(b, map, cfg, r2, 0.5);
    ASSERT_NEAR(a.position.x, b.position.x, 1e-6) << "t=" << t;
    ASSERT_NEAR(a.position.y, b.position.y, 1e-6) << "t=" << t;
  }
}

TEST(Mobility, VehicleVisitsGatewayAndRegion) {
  ScenarioConfig cfg = small_config();
  cfg.pr_disaster = 0.5;
  ScenarioMap map = build_scenario_map(cfg);
  Rng rng(cfg.rng_seed, "mobility", 99);
  MobilityState s = init_vehicle(50, map, cfg, rng);
  const Point gw = map.graph.position(map.gateway_vertex);
  bool at_gateway = false, in_region = false;
  for (int t = 0; t < 20000; ++t) {
    vehicle_tick(s, map, cfg, rng, 1.0);
    at_gateway |= s.position == gw;
    in_region |= cfg.disaster_region.contains(s.position);
    ASSERT_GE(s.speed, cfg.vehicle_speed.min);
    ASSERT_LE(s.speed, cfg.vehicle_speed.max);
  }
  EXPECT_TRUE(at_gateway);
  EXPECT_TRUE(in_region);
}

TEST(Mobility, VehicleTripDrawRate) {
  Rng rng(3);
  int region = 0;
  for (int i = 0; i < 20000; ++i) region += draw_vehicle_trip(0.35, rng) == Trip::kRegion;
  EXPECT_NEAR(region / 20000.0, 0.35, 0.015);
  EXPECT_EQ(draw_vehicle_trip(0.0, rng), Trip::kGateway);
  EXPECT_EQ(draw_vehicle_trip(1.0, rng), Trip::kRegion);
}

TEST(Mobility, SameSeedSameTrajectory) {
  ScenarioConfig cfg = small_config();
  ScenarioMap map = build_scenario_map(cfg);
  Rng r1(cfg.rng_seed, "mobility", 3);
  Rng r2(cfg.rng_seed, "mobility", 3);
  MobilityState a = init_pedestrian(3, map, cfg, r1);
  MobilityState b = init_pedestrian(3, map, cfg, r2);
  for (int t = 0; t < 1000; ++t) {
    pedestrian_tick(a, map, cfg, r1, 1.0);
    pedestrian_tick(b, map, cfg, r2, 1.0);
    ASSERT_EQ(a.position, b.position);
  }
}

// ---- contacts ---------------------------------------------------------------

TEST(Contacts, RangeIsMinimumOfBoth) {
  std::vector<Point> pos = {{0, 0}, {15, 0}, {40, 0}};
  EXPECT_EQ(detect_contacts(pos, {20, 20, 20}), (std::vector<NodePair>{{0, 1}}));
  EXPECT_EQ(detect_contacts(pos, {20, 10, 20}), std::vector<NodePair>{});
  EXPECT_EQ(detect_contacts({{0, 0}, {25, 0}}, {20, 20}), std::vector<NodePair>{});
  EXPECT_EQ(detect_contacts({{0, 0}, {20, 0}}, {20, 20}), (std::vector<NodePair>{{0, 1}}));
}

TEST(Contacts, GridMatchesBruteForce) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 50;
    const double side = rng.uniform(20, 500);
    std::vector<Point> pos;
    std::vector<double> ranges;
    for (std::size_t i = 0; i < n; ++i) {
      // Snap some to a coarse lattice so exact-range ties happen.
      double x = rng.uniform(0, side);
      double y = rng.uniform(0, side);
      if (rng.bernoulli(0.3)) {
        x = std::round(x / 20) * 20;
        y = std::round(y / 20) * 20;
      }
      pos.push_back({x, y});
      ranges.push_back(rng.bernoulli(0.8) ? 20.0 : rng.uniform(5, 40));
    }
    EXPECT_EQ(detect_contacts(pos, ranges), detect_contacts_brute(pos, ranges));
  }
}

TEST(Contacts, DeltaAndTracker) {
  ContactDelta d = contact_delta({{0, 1}, {1, 2}}, {{1, 2}, {2, 3}});
  EXPECT_EQ(d.started, (std::vector<NodePair>{{2, 3}}));
  EXPECT_EQ(d.ended, (std::vector<NodePair>{{0, 1}}));

  ContactTracker tr({10, 20, 30});
  tr.update(0, {{0, 1}});
  tr.update(1, {{0, 1}, {1, 2}});
  tr.update(2, {{1, 2}});
  auto ev = tr.events();
  ASSERT_EQ(ev.size(), 2U);
  EXPECT_EQ(ev[0].a, 0);
  EXPECT_EQ(ev[0].start_tick, 0);
  EXPECT_EQ(ev[0].end_tick, 2);
  EXPECT_EQ(ev[0].rate, 10);
  EXPECT_EQ(ev[1].end_tick, -1);
  EXPECT_EQ(ev[1].rate, 20);
  EXPECT_EQ(tr.active(), (std::vector<NodePair>{{1, 2}}));
}

}  // namespace
}  // namespace care
