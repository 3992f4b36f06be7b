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
#include <vector>

#include "care/detectors.hpp"
#include "care/error.hpp"
#include "care/evaluation.hpp"
#include "care/pipeline.hpp"
#include "care/rng.hpp"
#include "test_support.hpp"

namespace care {
namespace {

TEST(Gist, PearsonKnownValues) {
  EXPECT_DOUBLE_EQ(gist_similarity({1, 2, 3}, {2, 4, 6}), 1.0);
  EXPECT_DOUBLE_EQ(gist_similarity({1, 2, 3}, {3, 2, 1}), -1.0);
  // Means 2.5 and 2, covariance sum 1, variance sums 5 and 2: 1/sqrt(10).
  EXPECT_NEAR(gist_similarity({1, 2, 3, 4}, {1, 3, 2, 2}), 0.3162277660168379, 1e-12);
}

TEST(Gist, InvariantToAffineRescaling) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    FeatureVector a(32);
    FeatureVector b(32);
    for (auto& x : a) x = rng.uniform(-1, 1);
    for (auto& x : b) x = rng.uniform(-1, 1);
    FeatureVector c = b;
    for (auto& x : c) x = 3.5 * x + 7.0;
    EXPECT_NEAR(gist_similarity(a, b), gist_similarity(a, c), 1e-12);
    EXPECT_NEAR(gist_similarity(a, b), gist_similarity(b, a), 1e-15);
  }
}

TEST(Gist, RejectsDegenerateInput) {
  EXPECT_THROW(gist_similarity({1, 2}, {1, 2, 3}), InvalidInput);
  EXPECT_THROW(gist_similarity({1}, {1}), InvalidInput);
  EXPECT_THROW(gist_similarity({1, 1, 1}, {1, 2, 3}), InvalidInput);
  EXPECT_THROW(gist_similarity({1, std::nan(""), 1}, {1, 2, 3}), InvalidInput);
}

TEST(Sift, RatioNeedsMoreThanEightMatches) {
  EXPECT_FALSE(sift_similarity(8, 8).has_value());
  EXPECT_FALSE(sift_similarity(0, 0).has_value());
  EXPECT_DOUBLE_EQ(*sift_similarity(9, 3), 3.0 / 9.0);
  EXPECT_DOUBLE_EQ(*sift_similarity(20, 20), 1.0);
  EXPECT_THROW(sift_similarity(10, 11), InvalidInput);
  EXPECT_THROW(sift_similarity(-1, 0), InvalidInput);
}

TEST(Oracle, EmpiricalRatesMatchConfiguredRates) {
  const double fp = 0.01;
  const double fn = 0.30;
  std::size_t sim = 0, dis = 0, fps = 0, fns = 0;
  for (MsgId i = 0; i < 100000; ++i) {
    MessageRecord a{2 * i, i % 2 == 0 ? i : -1 - i};
    MessageRecord b{2 * i + 1, i % 2 == 0 ? i : -2 - i};
    Verdict v = oracle_decide(a, b, fp, fn, 42);
    if (a.cluster_id == b.cluster_id) {
      ++sim;
      fns += v == Verdict::kNotSimilar;
    } else {
      ++dis;
      fps += v == Verdict::kSimilar;
    }
  }
  EXPECT_NEAR(static_cast<double>(fps) / static_cast<double>(dis), fp, 0.005);
  EXPECT_NEAR(static_cast<double>(fns) / static_cast<double>(sim), fn, 0.005);
}

TEST(Oracle, VerdictIsStableAndSymmetric) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    MessageRecord a{static_cast<MsgId>(rng.uniform_int(0, 1000000)), 1};
    MessageRecord b{static_cast<MsgId>(rng.uniform_int(0, 1000000)), rng.bernoulli(0.5) ? 1 : 2};
    const Verdict first = oracle_decide(a, b, 0.2, 0.4, 9);
    for (int r = 0; r < 100; ++r) {
      ASSERT_EQ(oracle_decide(a, b, 0.2, 0.4, 9), first);
      ASSERT_EQ(oracle_decide(b, a, 0.2, 0.4, 9), first);
    }
  }
}

TEST(Oracle, ZeroRatesAreGroundTruth) {
  for (MsgId i = 0; i < 1000; ++i) {
    MessageRecord a{i, i % 7};
    MessageRecord b{i + 1000, (i + 1000) % 7};
    Verdict expect = a.cluster_id == b.cluster_id ? Verdict::kSimilar : Verdict::kNotSimilar;
    EXPECT_EQ(oracle_decide(a, b, 0.0, 0.0, 5), expect);
  }
}

TEST(Oracle, AdmissionRatesAndValidation) {
  AdmissionOracle o(0.05, 0.2, 77);
  std::size_t alarms = 0, misses = 0;
  const int n = 50000;
  for (MsgId i = 0; i < n; ++i) {
    alarms += o.false_alarm(i);
    misses += !o.detects(i, i + n);
  }
  EXPECT_NEAR(alarms / static_cast<double>(n), 0.05, 0.005);
  EXPECT_NEAR(misses / static_cast<double>(n), 0.2, 0.01);
  EXPECT_THROW(AdmissionOracle(-0.1, 0.0, 1), InvalidInput);
  EXPECT_THROW(AdmissionOracle(0.0, 1.5, 1), InvalidInput);
}

// ---- pipeline ---------------------------------------------------------------

PairEvidence full_evidence(double gist, int phash, long long m, long long mp) {
  PairEvidence e;
  e.distance_m = 10.0;
  e.age_s = 60.0;
  e.gist_score = gist;
  e.phash_score = phash;
  e.sift = SiftCounts{m, mp};
  return e;
}

TEST(Pipeline, StageOutcomes) {
  Thresholds t;
  CostModel c;
  StageCounts counts;

  Decision d = decide_pair(full_evidence(-0.3, 64, 40, 40), t, c, {}, &counts);
  EXPECT_EQ(d.verdict, Verdict::kNotSimilar);
  EXPECT_EQ(d.stage, Stage::kGist);
  EXPECT_DOUBLE_EQ(d.cost_units, 50.0);

  d = decide_pair(full_evidence(0.3, 61, 40, 0), t, c, {}, &counts);
  EXPECT_EQ(d.verdict, Verdict::kSimilar);
  EXPECT_EQ(d.stage, Stage::kPHash);
  EXPECT_DOUBLE_EQ(d.cost_units, 51.0);

  // pHash at the threshold is not enough; SIFT decides.
  d = decide_pair(full_evidence(0.3, 60, 20, 11), t, c, {}, &counts);
  EXPECT_EQ(d.verdict, Verdict::kSimilar);
  EXPECT_EQ(d.stage, Stage::kSift);
  EXPECT_DOUBLE_EQ(d.cost_units, 201.0);

  d = decide_pair(full_evidence(0.3, 10, 8, 8), t, c, {}, &counts);
  EXPECT_EQ(d.verdict, Verdict::kNotSimilar);
  EXPECT_EQ(d.stage, Stage::kSift);

  EXPECT_EQ(counts.n1, 4U);
  EXPECT_EQ(counts.n2, 3U);
  EXPECT_EQ(counts.n3, 2U);
  EXPECT_EQ(counts.gated, 0U);
}

TEST(Pipeline, GateIsFreeAndStrict) {
  PairEvidence e = full_evidence(0.9, 64, 40, 40);
  e.distance_m = 100.0;  // at the limit: passes
  EXPECT_EQ(decide_pair(e, {}, {}).stage, Stage::kPHash);
  e.distance_m = 100.5;
  StageCounts counts;
  Decision d = decide_pair(e, {}, {}, {}, &counts);
  EXPECT_EQ(d.stage, Stage::kGate);
  EXPECT_EQ(d.verdict, Verdict::kNotSimilar);
  EXPECT_EQ(d.cost_units, 0.0);
  EXPECT_EQ(counts.gated, 1U);
  EXPECT_EQ(counts.n1, 0U);
  e.distance_m.reset();
  e.age_s = 3601.0;
  EXPECT_EQ(decide_pair(e, {}, {}).stage, Stage::kGate);
}

TEST(Pipeline, MissingFeaturesSkipStages) {
  PairEvidence e;
  Decision d = decide_pair(e, {}, {});
  EXPECT_EQ(d.stage, Stage::kFallThrough);
  EXPECT_EQ(d.verdict, Verdict::kNotSimilar);
  EXPECT_EQ(d.cost_units, 0.0);
  e.sift = SiftCounts{30, 29};
  d = decide_pair(e, {}, {});
  EXPECT_EQ(d.stage, Stage::kSift);
  EXPECT_EQ(d.verdict, Verdict::kSimilar);
  EXPECT_DOUBLE_EQ(d.cost_units, 150.0);
}

TEST(Pipeline, AverageCostFormula) {
  CostModel c;
  EXPECT_DOUBLE_EQ(pipeline_avg_cost(100, 40, 10, c), (100 * 50.0 + 40 * 1.0 + 10 * 150.0) / 100);
  EXPECT_DOUBLE_EQ(pipeline_avg_cost(1, 0, 0, c), 50.0);
  EXPECT_THROW(pipeline_avg_cost(0, 0, 0, c), InvalidInput);
  EXPECT_THROW(pipeline_avg_cost(5, 6, 0, c), InvalidInput);
  EXPECT_THROW(pipeline_avg_cost(5, 4, 5, c), InvalidInput);
  EXPECT_THROW((CostModel{0.0, 1.0, 1.0}.validate()), InvalidInput);
}

// Independent composition of the two Similar-capable stages.
Verdict phash_then_sift(const PairEvidence& e, const Thresholds& t, const Gates& g) {
  if ((e.distance_m && *e.distance_m > g.max_distance_m) || (e.age_s && *e.age_s > g.max_age_s)) {
    return Verdict::kNotSimilar;
  }
  if (e.phash_score && *e.phash_score > t.phash) return Verdict::kSimilar;
  if (e.sift && e.sift->m > kSiftMinMatches &&
      static_cast<double>(e.sift->m_prime) / static_cast<double>(e.sift->m) > t.sift) {
    return Verdict::kSimilar;
  }
  return Verdict::kNotSimilar;
}

TEST(Pipeline, ForcedUncertainGistEqualsPhashThenSift) {
  Rng rng(17);
  auto corpus = testing::synthetic_corpus(rng, 60, 12);
  Thresholds t;
  PipelineOptions opts;
  opts.gist_force_uncertain = true;
  for (const auto& le : corpus) {
    EXPECT_EQ(decide_pair(le.evidence, t, {}, opts).verdict, phash_then_sift(le.evidence, t, {}));
  }
}

TEST(Pipeline, SimilarVerdictsOnlyFromPhashOrSift) {
  Rng rng(18);
  for (const auto& le : testing::synthetic_corpus(rng, 40, 8)) {
    Decision d = decide_pair(le.evidence, {}, {});
    if (d.verdict == Verdict::kSimilar) {
      EXPECT_TRUE(d.stage == Stage::kPHash || d.stage == Stage::kSift);
    }
    if (d.stage == Stage::kGist) { EXPECT_EQ(d.verdict, Verdict::kNotSimilar); }
  }
}

TEST(Pipeline, ReportCountsMatchHandTally) {
  Rng rng(19);
  auto corpus = testing::synthetic_corpus(rng, 50, 10);
  Thresholds t;
  CostModel c;
  Gates g;
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  for (const auto& le : corpus) {
    const PairEvidence& e = le.evidence;
    if ((e.distance_m && *e.distance_m > g.max_distance_m) || (e.age_s && *e.age_s > g.max_age_s)) {
      continue;
    }
    ++n1;
    if (e.gist_score && *e.gist_score < t.gist) continue;
    ++n2;
    if (e.phash_score && *e.phash_score > t.phash) continue;
    ++n3;
  }
  PipelineReport r = pipeline_report(corpus, t, c);
  EXPECT_EQ(r.counts.n1, n1);
  EXPECT_EQ(r.counts.n2, n2);
  EXPECT_EQ(r.counts.n3, n3);
  ASSERT_EQ(r.rows.size(), 4U);
  EXPECT_EQ(r.rows[3].method, "pipeline");
  EXPECT_DOUBLE_EQ(r.rows[3].cost, (n1 * 50.0 + n2 * 1.0 + n3 * 150.0) / static_cast<double>(n1));
}

TEST(Pipeline, AggregateOverBuffer) {
  ItemMeta cand{"c", GeoTag{40.44, -79.99}, 1000.0, PHash64{0xFFFF}, std::nullopt};
  ItemMeta far{"f", GeoTag{40.46, -79.99}, 1000.0, PHash64{0xFFFF}, std::nullopt};
  ItemMeta near{"n", GeoTag{40.4401, -79.99}, 1500.0, PHash64{0xFFFE}, std::nullopt};
  PipelineResult r = pipeline_decide(cand, {far, near}, {}, {});
  ASSERT_EQ(r.per_item.size(), 2U);
  EXPECT_EQ(r.per_item[0].stage, Stage::kGate);
  EXPECT_EQ(r.per_item[1].stage, Stage::kPHash);
  EXPECT_EQ(r.aggregate.verdict, Verdict::kSimilar);
  EXPECT_EQ(r.counts.gated, 1U);
  EXPECT_EQ(r.counts.n1, 1U);
  EXPECT_DOUBLE_EQ(r.cost_units, 1.0);
}

TEST(Geo, HaversineKnownDistance) {
  // One degree of latitude on the mean sphere.
  EXPECT_NEAR(geo_distance_m({0, 0}, {1, 0}), 111195.08, 0.1);
  EXPECT_NEAR(geo_distance_m({40.0, -80.0}, {40.0, -80.0}), 0.0, 1e-9);
}

TEST(SiftTable, UnorderedKeys) {
  SiftMatchTable t;
  t.set("b", "a", {12, 7});
  ASSERT_TRUE(t.find("a", "b").has_value());
  EXPECT_EQ(t.find("a", "b")->m_prime, 7);
  EXPECT_FALSE(t.find("a", "c").has_value());
}

}  // namespace
}  // namespace care
