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

#include "care/map_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "care/error.hpp"
#include "care/rng.hpp"

namespace care {

namespace {

double euclid(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Relative slack for comparing sums of edge lengths.
double slack(double v) { return 1e-9 * std::max(1.0, std::abs(v)); }

}  // namespace

VertexId MapGraph::add_vertex(Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw InvalidInput("map: vertex coordinates must be finite");
  }
  points_.push_back(p);
  adj_.emplace_back();
  return static_cast<VertexId>(points_.size() - 1);
}

void MapGraph::add_edge(VertexId a, VertexId b, double length) {
  if (!has_vertex(a) || !has_vertex(b)) {
    throw InvalidInput(fmt::format("map: edge ({}, {}) references an unknown vertex", a, b));
  }
  if (a == b) throw InvalidInput(fmt::format("map: self-loop at vertex {}", a));
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidInput(fmt::format("map: edge ({}, {}) has non-positive length", a, b));
  }
  const double straight = euclid(position(a), position(b));
  if (length < straight - slack(straight)) {
    throw InvalidInput(fmt::format("map: edge ({}, {}) length {} is shorter than the distance {}",
                                   a, b, length, straight));
  }
  if (edge_length(a, b)) throw InvalidInput(fmt::format("map: parallel edge ({}, {})", a, b));
  edges_.push_back({a, b, length});
  auto insert = [](std::vector<Neighbor>& list, Neighbor n) {
    auto it = std::lower_bound(list.begin(), list.end(), n.vertex,
                               [](const Neighbor& x, VertexId v) { return x.vertex < v; });
    list.insert(it, n);
  };
  insert(adj_[static_cast<std::size_t>(a)], {b, length});
  insert(adj_[static_cast<std::size_t>(b)], {a, length});
}

void MapGraph::add_straight_edge(VertexId a, VertexId b) {
  add_edge(a, b, euclid(position(a), position(b)));
}

std::optional<double> MapGraph::edge_length(VertexId a, VertexId b) const {
  if (!has_vertex(a) || !has_vertex(b)) return std::nullopt;
  const auto& list = adj_[static_cast<std::size_t>(a)];
  auto it = std::lower_bound(list.begin(), list.end(), b,
                             [](const Neighbor& x, VertexId v) { return x.vertex < v; });
  if (it == list.end() || it->vertex != b) return std::nullopt;
  return it->length;
}

VertexId MapGraph::nearest_vertex(Point p) const {
  if (points_.empty()) throw InvalidInput("map: no vertices");
  VertexId best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double d = euclid(points_[i], p);
    if (d < best_d) {
      best_d = d;
      best = static_cast<VertexId>(i);
    }
  }
  return best;
}

bool MapGraph::is_connected(const std::vector<char>& allowed) const {
  auto ok = [&](VertexId v) { return allowed.empty() || allowed[static_cast<std::size_t>(v)]; };
  std::vector<char> seen(points_.size(), 0);
  std::vector<VertexId> stack;
  std::size_t want = 0;
  for (std::size_t v = 0; v < points_.size(); ++v) {
    if (!ok(static_cast<VertexId>(v))) continue;
    ++want;
    if (stack.empty() && want == 1) {
      stack.push_back(static_cast<VertexId>(v));
      seen[v] = 1;
    }
  }
  std::size_t reached = stack.size();
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (const auto& n : neighbors(u)) {
      if (!ok(n.vertex) || seen[static_cast<std::size_t>(n.vertex)]) continue;
      seen[static_cast<std::size_t>(n.vertex)] = 1;
      ++reached;
      stack.push_back(n.vertex);
    }
  }
  return reached == want;
}

std::vector<VertexId> shortest_path(const MapGraph& g, VertexId from, VertexId to,
                                    const std::vector<char>& allowed) {
  auto ok = [&](VertexId v) { return allowed.empty() || allowed[static_cast<std::size_t>(v)]; };
  if (!g.has_vertex(from) || !g.has_vertex(to)) {
    throw InvalidInput(fmt::format("shortest_path: unknown vertex {} or {}", from, to));
  }
  if (!ok(from) || !ok(to)) {
    throw InvalidInput(fmt::format("shortest_path: endpoint {} or {} not allowed", from, to));
  }
  if (from == to) return {from};

  // Distances to `to`; the forward walk then picks, at each step, the
  // smallest-id neighbour that stays on some shortest path.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.vertex_count(), inf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[static_cast<std::size_t>(to)] = 0.0;
  pq.emplace(0.0, to);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& n : g.neighbors(u)) {
      if (!ok(n.vertex)) continue;
      const double nd = d + n.length;
      if (nd < dist[static_cast<std::size_t>(n.vertex)]) {
        dist[static_cast<std::size_t>(n.vertex)] = nd;
        pq.emplace(nd, n.vertex);
      }
    }
  }
  if (dist[static_cast<std::size_t>(from)] == inf) {
    throw InvalidInput(fmt::format("shortest_path: vertex {} unreachable from {}", to, from));
  }

  std::vector<VertexId> path{from};
  VertexId u = from;
  while (u != to) {
    const double du = dist[static_cast<std::size_t>(u)];
    VertexId next = -1;
    for (const auto& n : g.neighbors(u)) {
      if (!ok(n.vertex)) continue;
      const double dn = dist[static_cast<std::size_t>(n.vertex)];
      if (dn < du && std::abs(n.length + dn - du) <= slack(du)) {
        next = n.vertex;
        break;
      }
    }
    if (next < 0) throw Error("shortest_path: inconsistent distance labels");
    path.push_back(next);
    u = next;
  }
  return path;
}

double path_length(const MapGraph& g, const std::vector<VertexId>& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto len = g.edge_length(path[i - 1], path[i]);
    if (!len) {
      throw InvalidInput(fmt::format("path: no edge ({}, {})", path[i - 1], path[i]));
    }
    total += *len;
  }
  return total;
}

namespace {

std::size_t lattice_steps(double extent, double spacing, std::string_view what) {
  if (!(spacing > 0.0) || !(extent > 0.0) || !std::isfinite(extent) || !std::isfinite(spacing)) {
    throw InvalidInput(fmt::format("grid map: {} and spacing must be positive", what));
  }
  const double steps = extent / spacing;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
    throw InvalidInput(
        fmt::format("grid map: spacing {} does not divide {} {}", spacing, what, extent));
  }
  return static_cast<std::size_t>(rounded);
}

MapGraph lattice(double x0, double y0, double width, double height, double spacing) {
  const std::size_t nx = lattice_steps(width, spacing, "width") + 1;
  const std::size_t ny = lattice_steps(height, spacing, "height") + 1;
  MapGraph g;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      g.add_vertex({x0 + static_cast<double>(i) * spacing, y0 + static_cast<double>(j) * spacing});
    }
  }
  auto id = [nx](std::size_t i, std::size_t j) { return static_cast<VertexId>(j * nx + i); };
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      if (i + 1 < nx) g.add_edge(id(i, j), id(i + 1, j), spacing);
      if (j + 1 < ny) g.add_edge(id(i, j), id(i, j + 1), spacing);
    }
  }
  return g;
}

}  // namespace

MapGraph generate_grid_map(double width_m, double height_m, double spacing_m) {
  return lattice(0.0, 0.0, width_m, height_m, spacing_m);
}

ScenarioMap generate_scenario_map(const Rect& region, double spacing_m, Point gateway) {
  if (region.contains(gateway)) throw InvalidInput("grid map: gateway lies inside the region");
  MapGraph g = lattice(region.x_min, region.y_min, region.width(), region.height(), spacing_m);
  const std::size_t lattice_size = g.vertex_count();

  const VertexId anchor = g.nearest_vertex(gateway);
  const Point a = g.position(anchor);
  const double span = std::hypot(gateway.x - a.x, gateway.y - a.y);
  const auto segments = static_cast<std::size_t>(std::ceil(span / spacing_m - 1e-9));
  VertexId prev = anchor;
  for (std::size_t k = 1; k <= segments; ++k) {
    const double f = k == segments ? 1.0 : static_cast<double>(k) * spacing_m / span;
    const VertexId v = g.add_vertex({a.x + f * (gateway.x - a.x), a.y + f * (gateway.y - a.y)});
    g.add_straight_edge(prev, v);
    prev = v;
  }

  ScenarioMap m;
  m.graph = std::move(g);
  m.gateway_vertex = prev;
  m.in_region.assign(m.graph.vertex_count(), 0);
  for (std::size_t v = 0; v < lattice_size; ++v) {
    m.in_region[v] = 1;
    m.region_vertices.push_back(static_cast<VertexId>(v));
  }
  m.destinations = m.region_vertices;
  return m;
}

ScenarioMap scenario_from_graph(MapGraph graph, const Rect& region, Point gateway) {
  if (region.contains(gateway)) throw InvalidInput("map: gateway lies inside the region");
  if (!graph.is_connected()) throw InvalidInput("map: graph is not connected");
  ScenarioMap m;
  m.gateway_vertex = graph.nearest_vertex(gateway);
  m.in_region.assign(graph.vertex_count(), 0);
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (region.contains(graph.position(static_cast<VertexId>(v)))) {
      m.in_region[v] = 1;
      m.region_vertices.push_back(static_cast<VertexId>(v));
    }
  }
  if (m.region_vertices.empty()) throw InvalidInput("map: no vertex inside the disaster region");
  if (m.in_region[static_cast<std::size_t>(m.gateway_vertex)]) {
    throw InvalidInput("map: the vertex nearest the gateway lies inside the region");
  }
  if (!graph.is_connected(m.in_region)) {
    throw InvalidInput("map: the region's vertices do not form a connected road network");
  }
  m.destinations = m.region_vertices;
  m.graph = std::move(graph);
  return m;
}

void choose_points_of_interest(ScenarioMap& map, std::size_t count, std::uint64_t seed) {
  std::vector<VertexId> pool = map.region_vertices;
  if (count > 0 && count < pool.size()) {
    Rng rng(seed);
    for (std::size_t k = 0; k < count; ++k) {
      std::swap(pool[k], pool[k + rng.index(pool.size() - k)]);
    }
    pool.resize(count);
  }
  std::sort(pool.begin(), pool.end());
  map.destinations = std::move(pool);
}

ScenarioMap build_scenario_map(const ScenarioConfig& cfg) {
  ScenarioMap m =
      cfg.map_source == "grid"
          ? generate_scenario_map(cfg.disaster_region, cfg.map_spacing, cfg.gateway_position)
          : scenario_from_graph(read_map_file(cfg.map_source), cfg.disaster_region,
                                cfg.gateway_position);
  choose_points_of_interest(m, static_cast<std::size_t>(cfg.poi_count),
                            stream_seed(cfg.rng_seed, "poi"));
  return m;
}

// ---- file format ----------------------------------------------------------

namespace {

std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

std::size_t read_count(const std::string& line, std::string_view keyword) {
  std::istringstream in(line);
  std::string word;
  long long n = -1;
  std::string extra;
  if (!(in >> word >> n) || word != keyword || n < 0 || (in >> extra)) {
    throw InvalidInput(fmt::format("map: expected '{} <count>', got '{}'", keyword, line));
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

MapGraph parse_map(std::string_view text) {
  const auto lines = content_lines(text);
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= lines.size()) throw InvalidInput("map: unexpected end of file");
    return lines[pos++];
  };
  const std::size_t nv = read_count(next(), "vertices");
  std::vector<std::optional<Point>> pts(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const auto& line = next();
    std::istringstream in(line);
    long long id = -1;
    Point p;
    std::string extra;
    if (!(in >> id >> p.x >> p.y) || (in >> extra)) {
      throw InvalidInput(fmt::format("map: bad vertex line '{}'", line));
    }
    if (id < 0 || static_cast<std::size_t>(id) >= nv || pts[static_cast<std::size_t>(id)]) {
      throw InvalidInput(fmt::format("map: vertex id {} out of range or repeated", id));
    }
    pts[static_cast<std::size_t>(id)] = p;
  }
  MapGraph g;
  for (const auto& p : pts) g.add_vertex(*p);
  const std::size_t ne = read_count(next(), "edges");
  for (std::size_t i = 0; i < ne; ++i) {
    const auto& line = next();
    std::istringstream in(line);
    long long a = -1;
    long long b = -1;
    double len = 0.0;
    std::string extra;
    if (!(in >> a >> b >> len) || (in >> extra)) {
      throw InvalidInput(fmt::format("map: bad edge line '{}'", line));
    }
    g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b), len);
  }
  if (pos != lines.size()) throw InvalidInput("map: trailing content after the edge list");
  return g;
}

MapGraph read_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open map file '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_map(ss.str());
}

void write_map(std::ostream& out, const MapGraph& g) {
  out << "vertices " << g.vertex_count() << '\n';
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const Point p = g.position(static_cast<VertexId>(v));
    out << fmt::format("{} {} {}\n", v, p.x, p.y);
  }
  out << "edges " << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << fmt::format("{} {} {}\n", e.a, e.b, e.length);
}

}  // namespace care
