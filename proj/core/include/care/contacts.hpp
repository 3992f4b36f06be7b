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

// Range-based contact detection.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "care/config.hpp"

namespace care {

/// Unordered node pair with first < second.
using NodePair = std::pair<NodeId, NodeId>;

struct ContactEvent {
  NodeId a = 0;
  NodeId b = 0;
  std::int64_t start_tick = 0;
  std::int64_t end_tick = -1;  // first tick out of range; -1 while open
  double rate = 0.0;           // bits/s, min of the two radios
};

/// Pairs with distance <= min(range_a, range_b), sorted. positions[i] and
/// ranges[i] belong to node i. Uses a uniform grid bucketed by the largest
/// range.
std::vector<NodePair> detect_contacts(const std::vector<Point>& positions,
                                      const std::vector<double>& ranges);

/// O(n^2) reference scan with the same output.
std::vector<NodePair> detect_contacts_brute(const std::vector<Point>& positions,
                                            const std::vector<double>& ranges);

struct ContactDelta {
  std::vector<NodePair> started;
  std::vector<NodePair> ended;
};

/// Transitions between two sorted contact sets.
ContactDelta contact_delta(const std::vector<NodePair>& before, const std::vector<NodePair>& now);

/// Turns a per-tick contact sequence into closed/open events, ordered by
/// start tick then pair.
class ContactTracker {
 public:
  explicit ContactTracker(std::vector<double> rates) : rates_(std::move(rates)) {}

  /// Feeds the contact set of `tick` and returns the transitions.
  ContactDelta update(std::int64_t tick, const std::vector<NodePair>& now);
  const std::vector<NodePair>& active() const { return active_; }
  /// All events so far, open ones with end_tick == -1.
  std::vector<ContactEvent> events() const;

 private:
  std::vector<double> rates_;
  std::vector<NodePair> active_;
  std::vector<ContactEvent> closed_;
  std::vector<ContactEvent> open_;  // parallel to active_
};

}  // namespace care
