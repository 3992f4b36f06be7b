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

#include "care/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "care/csv.hpp"
#include "care/error.hpp"

namespace care {

void CostModel::validate() const {
  for (double c : {c_phash, c_gist, c_sift}) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw InvalidInput(fmt::format("stage costs must be positive, got {}", c));
    }
  }
}

double geo_distance_m(GeoTag a, GeoTag b) {
  constexpr double kEarthRadius = 6371008.8;
  constexpr double kRad = std::numbers::pi / 180.0;
  const double dlat = (b.lat - a.lat) * kRad;
  const double dlon = (b.lon - a.lon) * kRad;
  const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2.0 * kEarthRadius * std::asin(std::min(1.0, std::sqrt(s)));
}

std::pair<std::string, std::string> SiftMatchTable::key(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  return {std::string(a), std::string(b)};
}

void SiftMatchTable::set(std::string_view a, std::string_view b, SiftCounts counts) {
  table_[key(a, b)] = counts;
}

std::optional<SiftCounts> SiftMatchTable::find(std::string_view a, std::string_view b) const {
  auto it = table_.find(key(a, b));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

PairEvidence make_evidence(const ItemMeta& a, const ItemMeta& b, const SiftMatchTable* sift) {
  PairEvidence e;
  if (a.geo && b.geo) e.distance_m = geo_distance_m(*a.geo, *b.geo);
  if (a.timestamp && b.timestamp) e.age_s = std::abs(*a.timestamp - *b.timestamp);
  if (a.gist && b.gist) e.gist_score = gist_similarity(*a.gist, *b.gist);
  if (a.phash && b.phash) e.phash_score = phash_similarity(*a.phash, *b.phash);
  if (sift) e.sift = sift->find(a.item_id, b.item_id);
  return e;
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::kGate:
      return "gate";
    case Stage::kGist:
      return "gist";
    case Stage::kPHash:
      return "phash";
    case Stage::kSift:
      return "sift";
    case Stage::kFallThrough:
      return "fall_through";
  }
  return "?";
}

Decision decide_pair(const PairEvidence& e, const Thresholds& t, const CostModel& cost,
                     const PipelineOptions& opts, StageCounts* counts) {
  StageCounts local;
  Decision d;
  auto finish = [&](Verdict v, Stage s) {
    d.verdict = v;
    d.stage = s;
    if (counts) counts->add(local);
    return d;
  };

  if ((e.distance_m && *e.distance_m > opts.gates.max_distance_m) ||
      (e.age_s && *e.age_s > opts.gates.max_age_s)) {
    local.gated = 1;
    return finish(Verdict::kNotSimilar, Stage::kGate);
  }

  local.n1 = 1;
  if (!opts.gist_force_uncertain && e.gist_score) {
    d.cost_units += cost.c_gist;
    if (*e.gist_score < t.gist) return finish(Verdict::kNotSimilar, Stage::kGist);
  }

  local.n2 = 1;
  if (e.phash_score) {
    d.cost_units += cost.c_phash;
    if (*e.phash_score > t.phash) return finish(Verdict::kSimilar, Stage::kPHash);
  }

  local.n3 = 1;
  if (e.sift) {
    d.cost_units += cost.c_sift;
    auto s = sift_similarity(e.sift->m, e.sift->m_prime);
    return finish(s && *s > t.sift ? Verdict::kSimilar : Verdict::kNotSimilar, Stage::kSift);
  }
  return finish(Verdict::kNotSimilar, Stage::kFallThrough);
}

PipelineResult pipeline_decide(const ItemMeta& candidate, const std::vector<ItemMeta>& buffered,
                               const Thresholds& t, const CostModel& cost,
                               const PipelineOptions& opts, const SiftMatchTable* sift) {
  PipelineResult r;
  r.per_item.reserve(buffered.size());
  r.aggregate = Decision{Verdict::kNotSimilar, Stage::kFallThrough, 0.0};
  for (const auto& b : buffered) {
    Decision d = decide_pair(make_evidence(candidate, b, sift), t, cost, opts, &r.counts);
    r.cost_units += d.cost_units;
    if (d.verdict == Verdict::kSimilar && r.aggregate.verdict != Verdict::kSimilar) {
      r.aggregate.verdict = Verdict::kSimilar;
      r.aggregate.stage = d.stage;
    }
    r.per_item.push_back(d);
  }
  if (r.aggregate.verdict != Verdict::kSimilar && !r.per_item.empty()) {
    r.aggregate.stage = r.per_item.back().stage;
  }
  r.aggregate.cost_units = r.cost_units;
  return r;
}

double pipeline_avg_cost(std::size_t n1, std::size_t n2, std::size_t n3, const CostModel& cost) {
  if (n1 == 0) throw InvalidInput("pipeline_avg_cost: N1 must be positive");
  if (n2 > n1 || n3 > n2) {
    throw InvalidInput(fmt::format("pipeline_avg_cost: need N1 >= N2 >= N3, got {}, {}, {}", n1,
                                   n2, n3));
  }
  const double total = static_cast<double>(n1) * cost.c_gist +
                       static_cast<double>(n2) * cost.c_phash +
                       static_cast<double>(n3) * cost.c_sift;
  return total / static_cast<double>(n1);
}

// ---- file formats ---------------------------------------------------------

namespace {

bool is_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

// Reads rows, dropping a header row detected by a non-numeric `probe` column.
std::vector<csv::Row> read_rows(const std::filesystem::path& path, std::size_t probe,
                                std::size_t min_fields) {
  auto rows = csv::read_file(path, false).rows;
  if (!rows.empty() && rows.front().size() > probe && !is_number(rows.front()[probe]) &&
      !rows.front()[probe].empty()) {
    rows.erase(rows.begin());
  }
  for (const auto& r : rows) {
    if (r.size() < min_fields) {
      throw InvalidInput(fmt::format("{}: expected at least {} fields, got {}", path.string(),
                                     min_fields, r.size()));
    }
  }
  return rows;
}

}  // namespace

std::map<std::string, FeatureVector> read_feature_csv(const std::filesystem::path& path) {
  std::map<std::string, FeatureVector> out;
  for (const auto& r : read_rows(path, 1, 3)) {
    FeatureVector v;
    for (std::size_t i = 1; i < r.size(); ++i) v.push_back(csv::parse_double(r[i], "feature"));
    if (!out.emplace(r[0], std::move(v)).second) {
      throw InvalidInput(fmt::format("{}: duplicate item '{}'", path.string(), r[0]));
    }
  }
  return out;
}

SiftMatchTable read_sift_csv(const std::filesystem::path& path) {
  SiftMatchTable t;
  for (const auto& r : read_rows(path, 2, 4)) {
    SiftCounts c{csv::parse_int(r[2], "m"), csv::parse_int(r[3], "m_prime")};
    if (c.m < 0 || c.m_prime < 0 || c.m_prime > c.m) {
      throw InvalidInput(fmt::format("{}: invalid counts for ({}, {})", path.string(), r[0], r[1]));
    }
    t.set(r[0], r[1], c);
  }
  return t;
}

std::map<std::string, ItemMeta> read_metadata_csv(const std::filesystem::path& path) {
  std::map<std::string, ItemMeta> out;
  auto rows = csv::read_file(path, false).rows;
  if (!rows.empty() && rows.front().size() > 0 && rows.front()[0] == "item_id") {
    rows.erase(rows.begin());
  }
  for (auto& r : rows) {
    r.resize(4);
    ItemMeta m;
    m.item_id = r[0];
    if (!r[1].empty() || !r[2].empty()) {
      m.geo = GeoTag{csv::parse_double(r[1], "lat"), csv::parse_double(r[2], "lon")};
    }
    if (!r[3].empty()) m.timestamp = csv::parse_double(r[3], "timestamp");
    if (!out.emplace(m.item_id, m).second) {
      throw InvalidInput(fmt::format("{}: duplicate item '{}'", path.string(), m.item_id));
    }
  }
  return out;
}

std::map<std::string, PHash64> read_phash_csv(const std::filesystem::path& path) {
  std::map<std::string, PHash64> out;
  auto rows = csv::read_file(path, false).rows;
  if (!rows.empty() && !rows.front().empty() && rows.front()[0] == "item_id") {
    rows.erase(rows.begin());
  }
  for (const auto& r : rows) {
    if (r.size() < 2) throw InvalidInput(fmt::format("{}: expected item_id,hash", path.string()));
    out[r[0]] = PHash64::from_hex(r[1]);
  }
  return out;
}

}  // namespace care
