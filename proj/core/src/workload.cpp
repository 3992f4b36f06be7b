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

#include "care/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "care/csv.hpp"
#include "care/error.hpp"

namespace care {

double realized_redundancy(const std::vector<MessageRecord>& entries) {
  if (entries.empty()) return 0.0;
  std::unordered_set<ClusterId> clusters;
  for (const auto& e : entries) clusters.insert(e.cluster_id);
  return 1.0 - static_cast<double>(clusters.size()) / static_cast<double>(entries.size());
}

WorkloadSchedule generate_schedule(const ScenarioConfig& cfg, Rng& rng) {
  const auto n = static_cast<std::size_t>(message_count(cfg));
  if (n == 0) throw InvalidInput("workload: floor(T/G) is zero, no messages to generate");
  const auto copies =
      static_cast<std::size_t>(std::llround(cfg.target_redundancy_Rsim * static_cast<double>(n)));
  if (copies >= n) {
    throw InvalidInput(fmt::format("workload: R_sim={} leaves no seed among {} messages",
                                   cfg.target_redundancy_Rsim, n));
  }

  struct Draft {
    double time;
    NodeId owner;
    std::size_t seed;  // original index of the cluster's seed
  };
  std::vector<Draft> drafts(n);
  for (std::size_t i = 0; i < n; ++i) {
    drafts[i] = {static_cast<double>(i) * cfg.gen_interval_G,
                 static_cast<NodeId>(rng.index(static_cast<std::size_t>(cfg.n_people))), i};
  }

  // Partial Fisher-Yates over 1..n-1; entry 0 always stays a seed so every
  // converted entry has an earlier seed to copy.
  std::vector<std::size_t> pool(n - 1);
  std::iota(pool.begin(), pool.end(), std::size_t{1});
  for (std::size_t k = 0; k < copies; ++k) {
    const std::size_t j = k + rng.index(pool.size() - k);
    std::swap(pool[k], pool[j]);
  }
  std::vector<char> converted(n, 0);
  for (std::size_t k = 0; k < copies; ++k) converted[pool[k]] = 1;
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    if (!converted[i]) seeds.push_back(i);
  }

  const double horizon = cfg.duration_T;
  for (std::size_t i = 1; i < n; ++i) {
    if (!converted[i]) continue;
    const auto earlier = static_cast<std::size_t>(
        std::lower_bound(seeds.begin(), seeds.end(), i) - seeds.begin());
    const std::size_t s = seeds[rng.index(earlier)];
    drafts[i].seed = s;
    if (cfg.owner_mode == OwnerMode::kSameAsSeed) {
      drafts[i].owner = drafts[s].owner;
    } else {
      drafts[i].owner = static_cast<NodeId>(rng.index(static_cast<std::size_t>(cfg.n_people)));
    }
    const double t = drafts[s].time;
    drafts[i].time = std::clamp(rng.uniform(t - cfg.window_W, t + cfg.window_W), 0.0, horizon);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return drafts[a].time < drafts[b].time;
  });
  std::vector<MsgId> new_id(n);
  for (std::size_t pos = 0; pos < n; ++pos) new_id[order[pos]] = static_cast<MsgId>(pos);

  WorkloadSchedule out;
  out.entries.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const Draft& d = drafts[order[pos]];
    out.entries.push_back(MessageRecord{static_cast<MsgId>(pos), new_id[d.seed], d.owner, d.time,
                                        cfg.message_size});
  }
  out.realized_redundancy = realized_redundancy(out.entries);
  return out;
}

WorkloadSchedule generate_schedule(const ScenarioConfig& cfg) {
  Rng rng(cfg.rng_seed, "workload");
  return generate_schedule(cfg, rng);
}

void write_schedule_csv(std::ostream& out, const WorkloadSchedule& s) {
  csv::Writer w(out);
  w.values("time", "owner", "msg_id", "cluster_id", "size");
  for (const auto& e : s.entries) w.values(e.created_at, e.owner, e.msg_id, e.cluster_id, e.size);
}

WorkloadSchedule parse_schedule_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty() || rows.front().empty() || rows.front()[0] != "time") {
    throw InvalidInput("schedule: missing header time,owner,msg_id,cluster_id,size");
  }
  WorkloadSchedule s;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 5) {
      throw InvalidInput(fmt::format("schedule row {}: expected 5 fields, got {}", i, r.size()));
    }
    MessageRecord m;
    m.created_at = csv::parse_double(r[0], "time");
    m.owner = static_cast<NodeId>(csv::parse_int(r[1], "owner"));
    m.msg_id = csv::parse_int(r[2], "msg_id");
    m.cluster_id = csv::parse_int(r[3], "cluster_id");
    const long long size = csv::parse_int(r[4], "size");
    if (size <= 0) throw InvalidInput(fmt::format("schedule row {}: size must be > 0", i));
    m.size = static_cast<Bytes>(size);
    s.entries.push_back(m);
  }
  s.realized_redundancy = realized_redundancy(s.entries);
  return s;
}

WorkloadSchedule read_schedule_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open schedule '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_schedule_csv(ss.str());
}

void validate_schedule(const WorkloadSchedule& s, const ScenarioConfig& cfg) {
  std::unordered_set<MsgId> ids;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    if (!ids.insert(e.msg_id).second) {
      throw InvalidInput(fmt::format("schedule: repeated msg_id {}", e.msg_id));
    }
    if (e.owner < 0 || e.owner >= cfg.n_people) {
      throw InvalidInput(fmt::format("schedule: owner {} is not a person", e.owner));
    }
    if (!(e.created_at >= 0.0 && e.created_at <= cfg.duration_T)) {
      throw InvalidInput(fmt::format("schedule: time {} outside [0, T]", e.created_at));
    }
    if (i > 0 && e.created_at < s.entries[i - 1].created_at) {
      throw InvalidInput("schedule: entries are not sorted by time");
    }
  }
}

}  // namespace care
