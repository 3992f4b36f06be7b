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

// Road network graph, shortest paths and the synthetic grid map.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "care/config.hpp"

namespace care {

using VertexId = int;

struct MapEdge {
  VertexId a = 0;
  VertexId b = 0;
  double length = 0.0;
};

/// Undirected road graph. Vertex ids are dense, 0..n-1 in insertion order.
class MapGraph {
 public:
  struct Neighbor {
    VertexId vertex;
    double length;
  };

  VertexId add_vertex(Point p);
  /// Throws InvalidInput for unknown endpoints, self-loops, parallel edges,
  /// non-positive lengths or lengths shorter than the straight-line distance.
  void add_edge(VertexId a, VertexId b, double length);
  /// Straight segment: length = Euclidean distance.
  void add_straight_edge(VertexId a, VertexId b);

  std::size_t vertex_count() const { return points_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  Point position(VertexId v) const { return points_.at(static_cast<std::size_t>(v)); }
  const std::vector<Point>& positions() const { return points_; }
  const std::vector<MapEdge>& edges() const { return edges_; }
  /// Sorted by neighbor id.
  const std::vector<Neighbor>& neighbors(VertexId v) const {
    return adj_.at(static_cast<std::size_t>(v));
  }
  std::optional<double> edge_length(VertexId a, VertexId b) const;
  bool has_vertex(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < points_.size();
  }

  /// Closest vertex by Euclidean distance, lowest id on ties.
  VertexId nearest_vertex(Point p) const;

  /// Flood fill over the vertices with allowed[v] != 0 (all when empty).
  bool is_connected(const std::vector<char>& allowed = {}) const;

 private:
  std::vector<Point> points_;
  std::vector<MapEdge> edges_;
  std::vector<std::vector<Neighbor>> adj_;
};

/// Minimal-length path from `from` to `to`, inclusive of both ends. Among
/// equal-length paths the lexicographically smallest vertex sequence wins.
/// When `allowed` is non-empty only vertices with allowed[v] != 0 are used.
/// Throws InvalidInput for unknown or disallowed endpoints and when `to` is
/// unreachable.
std::vector<VertexId> shortest_path(const MapGraph& g, VertexId from, VertexId to,
                                    const std::vector<char>& allowed = {});

double path_length(const MapGraph& g, const std::vector<VertexId>& path);

/// Lattice over [0, width] x [0, height] with 4-neighbour edges.
MapGraph generate_grid_map(double width_m, double height_m, double spacing_m);

struct ScenarioMap {
  MapGraph graph;
  std::vector<char> in_region;          // per vertex
  std::vector<VertexId> region_vertices;
  std::vector<VertexId> destinations;  // points of interest, sorted; subset of region_vertices
  VertexId gateway_vertex = 0;
};

/// Keeps `count` region vertices, chosen uniformly without replacement, as
/// destinations. count == 0 or count >= |region| keeps all of them.
void choose_points_of_interest(ScenarioMap& map, std::size_t count, std::uint64_t seed);

/// Lattice covering `region` plus a straight corridor of vertices (one per
/// `spacing`, the last segment possibly shorter) from the lattice vertex
/// nearest to `gateway` out to the gateway. Throws InvalidInput when the
/// spacing does not divide the region or the gateway lies inside it.
ScenarioMap generate_scenario_map(const Rect& region, double spacing_m, Point gateway);

/// Region vertices = vertices inside `region`; gateway = nearest vertex to
/// `gateway`, which must lie outside the region. The region-induced subgraph
/// must be connected.
ScenarioMap scenario_from_graph(MapGraph graph, const Rect& region, Point gateway);

/// Generated or loaded according to cfg.map_source, with cfg.poi_count
/// points of interest drawn from the "poi" sub-stream of cfg.rng_seed.
ScenarioMap build_scenario_map(const ScenarioConfig& cfg);

/// Text format: "vertices n", n lines "id x y", "edges m", m lines
/// "a b length". '#' comments and blank lines are ignored.
MapGraph parse_map(std::string_view text);
MapGraph read_map_file(const std::filesystem::path& path);
void write_map(std::ostream& out, const MapGraph& g);

}  // namespace care
