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

#include "care/contacts.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "care/error.hpp"

namespace care {

namespace {

bool in_range(Point a, Point b, double ra, double rb) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double r = std::min(ra, rb);
  return dx * dx + dy * dy <= r * r;
}

void check_sizes(const std::vector<Point>& positions, const std::vector<double>& ranges) {
  if (positions.size() != ranges.size()) {
    throw InvalidInput(fmt::format("contacts: {} positions for {} ranges", positions.size(),
                                   ranges.size()));
  }
}

}  // namespace

std::vector<NodePair> detect_contacts_brute(const std::vector<Point>& positions,
                                            const std::vector<double>& ranges) {
  check_sizes(positions, ranges);
  std::vector<NodePair> out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (in_range(positions[i], positions[j], ranges[i], ranges[j])) {
        out.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
      }
    }
  }
  return out;
}

std::vector<NodePair> detect_contacts(const std::vector<Point>& positions,
                                      const std::vector<double>& ranges) {
  check_sizes(positions, ranges);
  if (positions.empty()) return {};
  const double cell = std::max(1.0, *std::max_element(ranges.begin(), ranges.end()));
  auto key = [](std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint32_t>(cy);
  };
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
  std::vector<std::pair<std::int64_t, std::int64_t>> cells(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto cx = static_cast<std::int64_t>(std::floor(positions[i].x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(positions[i].y / cell));
    cells[i] = {cx, cy};
    grid[key(cx, cy)].push_back(i);
  }
  std::vector<NodePair> out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto [cx, cy] = cells[i];
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(key(cx + dx, cy + dy));
        if (it == grid.end()) continue;
        for (std::size_t j : it->second) {
          if (j <= i) continue;
          if (in_range(positions[i], positions[j], ranges[i], ranges[j])) {
            out.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ContactDelta contact_delta(const std::vector<NodePair>& before, const std::vector<NodePair>& now) {
  ContactDelta d;
  std::set_difference(now.begin(), now.end(), before.begin(), before.end(),
                      std::back_inserter(d.started));
  std::set_difference(before.begin(), before.end(), now.begin(), now.end(),
                      std::back_inserter(d.ended));
  return d;
}

ContactDelta ContactTracker::update(std::int64_t tick, const std::vector<NodePair>& now) {
  ContactDelta d = contact_delta(active_, now);
  std::vector<ContactEvent> next_open;
  next_open.reserve(now.size());
  std::size_t k = 0;
  for (const auto& p : now) {
    while (k < active_.size() && active_[k] < p) {
      closed_.push_back(open_[k]);
      closed_.back().end_tick = tick;
      ++k;
    }
    if (k < active_.size() && active_[k] == p) {
      next_open.push_back(open_[k++]);
    } else {
      const double rate = std::min(rates_.at(static_cast<std::size_t>(p.first)),
                                   rates_.at(static_cast<std::size_t>(p.second)));
      next_open.push_back(ContactEvent{p.first, p.second, tick, -1, rate});
    }
  }
  for (; k < active_.size(); ++k) {
    closed_.push_back(open_[k]);
    closed_.back().end_tick = tick;
  }
  active_ = now;
  open_ = std::move(next_open);
  return d;
}

std::vector<ContactEvent> ContactTracker::events() const {
  std::vector<ContactEvent> all = closed_;
  all.insert(all.end(), open_.begin(), open_.end());
  std::sort(all.begin(), all.end(), [](const ContactEvent& x, const ContactEvent& y) {
    return std::tie(x.start_tick, x.a, x.b, x.end_tick) <
           std::tie(y.start_tick, y.a, y.b, y.end_tick);
  });
  return all;
}

}  // namespace care
