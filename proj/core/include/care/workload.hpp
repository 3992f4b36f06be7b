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

// Message schedule with a controlled share of redundant copies.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "care/config.hpp"
#include "care/rng.hpp"

namespace care {

struct WorkloadSchedule {
  std::vector<MessageRecord> entries;  // sorted by created_at, msg_id = index
  double realized_redundancy = 0.0;
};

/// 1 - distinct clusters / entries; 0 for an empty list.
double realized_redundancy(const std::vector<MessageRecord>& entries);

/// floor(T/G) messages at k*G from uniform-random people. Then round(R*N)
/// entries other than the first are turned into copies: each copies a
/// uniform-random earlier seed (an entry not itself converted), takes its
/// cluster, an owner per owner_mode, and a time uniform in the seed's time
/// +/- window_W clipped to [0, T]. Entries are re-sorted by time (ties by
/// original order) and renumbered. Throws InvalidInput when round(R*N) >= N.
WorkloadSchedule generate_schedule(const ScenarioConfig& cfg, Rng& rng);

/// Same as above with the workload sub-stream of cfg.rng_seed.
WorkloadSchedule generate_schedule(const ScenarioConfig& cfg);

/// CSV with header time,owner,msg_id,cluster_id,size.
void write_schedule_csv(std::ostream& out, const WorkloadSchedule& s);
WorkloadSchedule parse_schedule_csv(std::string_view text);
WorkloadSchedule read_schedule_csv(const std::filesystem::path& path);

/// Imported schedules must be time-sorted with unique ids, owners naming
/// people (0..n_people-1) and times inside [0, T].
void validate_schedule(const WorkloadSchedule& s, const ScenarioConfig& cfg);

}  // namespace care
