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

// Staged similarity pipeline with cost accounting.
//
// Per buffered item: metadata gate (free), then GIST (may only rule out),
// then pHash (may only confirm), then SIFT (final say). A stage whose
// feature is missing on either side is skipped.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "care/detectors.hpp"
#include "care/phash.hpp"

namespace care {

struct CostModel {
  double c_phash = 1.0;
  double c_gist = 50.0;
  double c_sift = 150.0;

  /// Throws InvalidInput unless every cost is positive and finite.
  void validate() const;
};

struct Thresholds {
  double gist = 0.0;   // NotSimilar when S_gist < gist
  double phash = 60.0; // Similar when S_ph > phash
  double sift = 0.5;   // Similar when m > 8 and S_sift > sift
};

struct Gates {
  double max_distance_m = 100.0;
  double max_age_s = 3600.0;
};

struct GeoTag {
  double lat = 0.0;
  double lon = 0.0;
};

/// Great-circle distance in meters (haversine, mean Earth radius).
double geo_distance_m(GeoTag a, GeoTag b);

struct SiftCounts {
  long long m = 0;        // matched keypoints
  long long m_prime = 0;  // matches surviving geometric refinement
};

struct ItemMeta {
  std::string item_id;
  std::optional<GeoTag> geo;
  std::optional<double> timestamp;
  std::optional<PHash64> phash;
  std::optional<FeatureVector> gist;
};

/// Externally supplied SIFT counts keyed by unordered item pair.
class SiftMatchTable {
 public:
  void set(std::string_view a, std::string_view b, SiftCounts counts);
  std::optional<SiftCounts> find(std::string_view a, std::string_view b) const;
  std::size_t size() const { return table_.size(); }

 private:
  static std::pair<std::string, std::string> key(std::string_view a, std::string_view b);
  std::map<std::pair<std::string, std::string>, SiftCounts> table_;
};

/// Everything a single pairwise decision looks at.
struct PairEvidence {
  std::optional<double> distance_m;
  std::optional<double> age_s;
  std::optional<double> gist_score;
  std::optional<int> phash_score;
  std::optional<SiftCounts> sift;
};

PairEvidence make_evidence(const ItemMeta& a, const ItemMeta& b,
                           const SiftMatchTable* sift = nullptr);

enum class Stage { kGate, kGist, kPHash, kSift, kFallThrough };

std::string_view to_string(Stage s);

struct Decision {
  Verdict verdict = Verdict::kNotSimilar;
  Stage stage = Stage::kFallThrough;
  double cost_units = 0.0;
};

struct PipelineOptions {
  Gates gates;
  /// Replace the GIST stage by one that always answers Uncertain (at no
  /// cost). Used to check that Similar verdicts come only from pHash/SIFT.
  bool gist_force_uncertain = false;
};

/// Number of pair comparisons that reached each stage.
struct StageCounts {
  std::size_t gated = 0;  // resolved by the metadata gate
  std::size_t n1 = 0;     // entered GIST
  std::size_t n2 = 0;     // entered pHash
  std::size_t n3 = 0;     // entered SIFT

  void add(const StageCounts& o) {
    gated += o.gated;
    n1 += o.n1;
    n2 += o.n2;
    n3 += o.n3;
  }
};

/// Runs the stages for one pair. `counts`, when given, is incremented for
/// every stage the pair enters. Never returns Uncertain: a pair that falls
/// off the end (no SIFT evidence) is NotSimilar with stage kFallThrough.
Decision decide_pair(const PairEvidence& e, const Thresholds& t, const CostModel& cost,
                     const PipelineOptions& opts = {}, StageCounts* counts = nullptr);

struct PipelineResult {
  std::vector<Decision> per_item;
  Decision aggregate;  // Similar iff any per-item verdict is Similar
  StageCounts counts;
  double cost_units = 0.0;
};

PipelineResult pipeline_decide(const ItemMeta& candidate, const std::vector<ItemMeta>& buffered,
                               const Thresholds& t, const CostModel& cost,
                               const PipelineOptions& opts = {},
                               const SiftMatchTable* sift = nullptr);

/// (N1 c_gist + N2 c_phash + N3 c_sift) / N1. Throws InvalidInput when
/// N1 == 0 or the counts are not nested.
double pipeline_avg_cost(std::size_t n1, std::size_t n2, std::size_t n3, const CostModel& cost);

// ---- file formats ---------------------------------------------------------

/// item_id,v1,...,vk (optional header with first field "item_id").
std::map<std::string, FeatureVector> read_feature_csv(const std::filesystem::path& path);
/// item_a,item_b,m,m_prime
SiftMatchTable read_sift_csv(const std::filesystem::path& path);
/// item_id,lat,lon,timestamp; empty fields mean "absent".
std::map<std::string, ItemMeta> read_metadata_csv(const std::filesystem::path& path);
/// item_id,hash (16 hex digits).
std::map<std::string, PHash64> read_phash_csv(const std::filesystem::path& path);

}  // namespace care
