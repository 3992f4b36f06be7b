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

#include <map>
#include <set>
#include <sstream>

#include "care/config.hpp"
#include "care/error.hpp"
#include "care/rng.hpp"
#include "care/workload.hpp"
#include "test_support.hpp"

namespace care {
namespace {

bool has_issue(const ScenarioConfig& cfg, const std::string& field) {
  for (const auto& i : validate_config(cfg)) {
    if (i.field == field) return true;
  }
  return false;
}

TEST(Config, DefaultsAreValid) {
  ScenarioConfig cfg;
  EXPECT_TRUE(validate_config(cfg).empty());
  EXPECT_EQ(message_count(cfg), 600);
  EXPECT_NEAR(cfg.pedestrian_speed.min, 3.0 / 3.6, 1e-12);
  EXPECT_NEAR(cfg.vehicle_speed.max, 15.0, 1e-12);
}

TEST(Config, FormulaBuffer) {
  ScenarioConfig cfg;
  cfg.target_redundancy_Rsim = 0.3;
  EXPECT_EQ(derive_people_buffer(cfg), 126'000'000U);
  cfg.target_redundancy_Rsim = 0.0;
  EXPECT_EQ(derive_people_buffer(cfg), 180'000'000U);
  cfg.target_redundancy_Rsim = 0.6;
  EXPECT_EQ(people_buffer_capacity(cfg), 72'000'000U);
  cfg.buffer_mode = BufferMode::kExplicit;
  cfg.people_buffer = 5;
  EXPECT_EQ(people_buffer_capacity(cfg), 5U);
  cfg.gen_interval_G = 2 * cfg.duration_T;
  EXPECT_THROW(derive_people_buffer(cfg), InvalidInput);
}

TEST(Config, ValidationCatchesEachField) {
  ScenarioConfig cfg;
  cfg.target_redundancy_Rsim = 1.0;
  EXPECT_TRUE(has_issue(cfg, "target_redundancy_Rsim"));
  cfg = {};
  cfg.pr_disaster = 1.5;
  EXPECT_TRUE(has_issue(cfg, "pr_disaster"));
  cfg = {};
  cfg.gen_interval_G = cfg.duration_T + 1;
  EXPECT_TRUE(has_issue(cfg, "gen_interval_G"));
  cfg = {};
  cfg.gateway_position = {100, 100};
  EXPECT_TRUE(has_issue(cfg, "gateway_position"));
  cfg = {};
  cfg.poi_count = -1;
  EXPECT_TRUE(has_issue(cfg, "poi_count"));
  cfg = {};
  cfg.n_people = 0;
  cfg.dt = 0;
  EXPECT_GE(validate_config(cfg).size(), 2U);
  EXPECT_THROW(require_valid(cfg), InvalidInput);
}

TEST(Config, CanonicalJsonRoundTrip) {
  ScenarioConfig cfg;
  cfg.pr_disaster = 0.125;
  cfg.owner_mode = OwnerMode::kSameAsSeed;
  cfg.detector_fn = 0.2;
  cfg.poi_count = 9;
  const std::string text = to_canonical_json(cfg);
  ScenarioConfig back = config_from_json(text);
  EXPECT_EQ(back, cfg);
  EXPECT_EQ(to_canonical_json(back), text);
}

TEST(Config, PartialDocumentsAndUnknownKeys) {
  ScenarioConfig cfg = config_from_json(R"({"n_people": 10, "pedestrian_speed": [3.6, 7.2]})");
  EXPECT_EQ(cfg.n_people, 10);
  EXPECT_NEAR(cfg.pedestrian_speed.min, 1.0, 1e-12);
  EXPECT_NEAR(cfg.pedestrian_speed.max, 2.0, 1e-12);
  EXPECT_EQ(cfg.duration_T, ScenarioConfig{}.duration_T);
  EXPECT_THROW(config_from_json(R"({"n_peeple": 10})"), InvalidInput);
  EXPECT_THROW(config_from_json(R"({"n_people": "ten"})"), InvalidInput);
  EXPECT_THROW(config_from_json(R"({"n_people": 2.5})"), InvalidInput);
  EXPECT_THROW(config_from_json("[1, 2"), InvalidInput);
}

TEST(Config, Overrides) {
  ScenarioConfig cfg;
  apply_override(cfg, "pr_disaster=0.2");
  apply_override(cfg, "map_source=roads.txt");
  apply_override(cfg, "vehicle_wait=[10,20]");
  EXPECT_EQ(cfg.pr_disaster, 0.2);
  EXPECT_EQ(cfg.map_source, "roads.txt");
  EXPECT_EQ(cfg.vehicle_wait, (Range{10, 20}));
  EXPECT_THROW(apply_override(cfg, "pr_disaster"), InvalidInput);
  EXPECT_THROW(apply_override(cfg, "nope=1"), InvalidInput);
}

TEST(Config, NodeLayout) {
  ScenarioConfig cfg;
  cfg.n_people = 3;
  auto specs = build_node_specs(cfg);
  ASSERT_EQ(specs.size(), 5U);
  EXPECT_EQ(specs[2].role, Role::kPerson);
  EXPECT_EQ(specs[3].role, Role::kVehicle);
  EXPECT_EQ(specs[3].node_id, vehicle_id(cfg));
  EXPECT_EQ(specs[4].role, Role::kGateway);
  EXPECT_EQ(specs[4].node_id, gateway_id(cfg));
  EXPECT_EQ(specs[3].buffer_capacity, cfg.rescue_buffer);
  EXPECT_EQ(specs[0].buffer_capacity, people_buffer_capacity(cfg));
  EXPECT_EQ(specs[0].link_rate, 10e6);
  EXPECT_EQ(specs[3].link_rate, 100e6);
}

// ---- workload ---------------------------------------------------------------

TEST(Workload, CountsAndRealizedRedundancy) {
  for (double r : {0.0, 0.2, 0.3, 0.4, 0.6}) {
    ScenarioConfig cfg;
    cfg.target_redundancy_Rsim = r;
    WorkloadSchedule s = generate_schedule(cfg);
    ASSERT_EQ(s.entries.size(), 600U);
    std::set<ClusterId> clusters;
    for (const auto& e : s.entries) clusters.insert(e.cluster_id);
    // Every non-converted entry is its own cluster; copies add none.
    EXPECT_EQ(clusters.size(), 600U - static_cast<std::size_t>(std::llround(r * 600)));
    EXPECT_NEAR(s.realized_redundancy, r, 1e-12);
    EXPECT_DOUBLE_EQ(s.realized_redundancy, realized_redundancy(s.entries));
  }
}

TEST(Workload, StructuralInvariants) {
  Rng outer(51);
  for (int trial = 0; trial < 30; ++trial) {
    ScenarioConfig cfg;
    cfg.duration_T = outer.uniform(100, 20000);
    cfg.gen_interval_G = outer.uniform(5, 60);
    cfg.target_redundancy_Rsim = outer.uniform(0.0, 0.8);
    cfg.window_W = outer.uniform(0, 100);
    cfg.n_people = 1 + static_cast<int>(outer.index(60));
    cfg.owner_mode = outer.bernoulli(0.5) ? OwnerMode::kRandom : OwnerMode::kSameAsSeed;
    Rng rng(outer.uniform_int(0, 1 << 30));
    WorkloadSchedule s;
    try {
      s = generate_schedule(cfg, rng);
    } catch (const InvalidInput&) {
      continue;  // R rounds to every entry on tiny schedules
    }
    std::map<ClusterId, const MessageRecord*> seed;
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
      const auto& e = s.entries[i];
      ASSERT_EQ(e.msg_id, static_cast<MsgId>(i));
      ASSERT_GE(e.created_at, 0.0);
      ASSERT_LE(e.created_at, cfg.duration_T);
      ASSERT_GE(e.owner, 0);
      ASSERT_LT(e.owner, cfg.n_people);
      if (i > 0) { ASSERT_LE(s.entries[i - 1].created_at, e.created_at); }
      if (e.cluster_id == e.msg_id) seed[e.cluster_id] = &e;
    }
    for (const auto& e : s.entries) {
      ASSERT_TRUE(seed.contains(e.cluster_id)) << "cluster without its seed";
      const MessageRecord& sd = *seed[e.cluster_id];
      ASSERT_LE(std::abs(e.created_at - sd.created_at), cfg.window_W + 1e-9);
      if (cfg.owner_mode == OwnerMode::kSameAsSeed) { ASSERT_EQ(e.owner, sd.owner); }
    }
    EXPECT_NO_THROW(validate_schedule(s, cfg));
  }
}

TEST(Workload, Deterministic) {
  ScenarioConfig cfg;
  EXPECT_EQ(generate_schedule(cfg).entries, generate_schedule(cfg).entries);
  ScenarioConfig other = cfg;
  other.rng_seed = 2;
  EXPECT_NE(generate_schedule(cfg).entries, generate_schedule(other).entries);
}

TEST(Workload, RejectsFullConversion) {
  ScenarioConfig cfg;
  cfg.duration_T = 60;
  cfg.gen_interval_G = 30;  // two messages
  cfg.target_redundancy_Rsim = 0.75;
  EXPECT_THROW(generate_schedule(cfg), InvalidInput);
}

TEST(Workload, CsvRoundTripAndValidation) {
  ScenarioConfig cfg;
  WorkloadSchedule s = generate_schedule(cfg);
  std::ostringstream out;
  write_schedule_csv(out, s);
  WorkloadSchedule back = parse_schedule_csv(out.str());
  EXPECT_EQ(back.entries, s.entries);

  EXPECT_THROW(parse_schedule_csv("0,1,0,0,300000\n"), InvalidInput);
  WorkloadSchedule bad = s;
  bad.entries[3].owner = cfg.n_people;
  EXPECT_THROW(validate_schedule(bad, cfg), InvalidInput);
  bad = s;
  std::swap(bad.entries[5].created_at, bad.entries[400].created_at);
  EXPECT_THROW(validate_schedule(bad, cfg), InvalidInput);
  bad = s;
  bad.entries[7].msg_id = bad.entries[8].msg_id;
  EXPECT_THROW(validate_schedule(bad, cfg), InvalidInput);
}

}  // namespace
}  // namespace care
