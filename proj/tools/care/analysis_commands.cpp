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

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <set>

#include <fmt/format.h>

#include "care/chunk.hpp"
#include "care/csv.hpp"
#include "care/error.hpp"
#include "care/evaluation.hpp"
#include "care/image.hpp"
#include "care/phash.hpp"
#include "care/pipeline.hpp"
#include "care/redundancy.hpp"
#include "commands.hpp"

namespace care::cli {

int cmd_redundancy(const RedundancyArgs& a) {
  const auto records = read_labels_csv(a.labels);
  std::vector<std::string> items;
  if (!a.items.empty()) {
    items = read_items_file(a.items);
  } else {
    for (const auto& r : records) {
      items.push_back(r.item_a);
      items.push_back(r.item_b);
    }
  }
  const SimilarityGraph g = aggregate_labels(records, std::move(items));
  const SimilarSetCover cover = analyze_redundancy(g, a.exact_limit);
  if (a.format == "text") {
    write_cover_text(std::cout, g, cover);
  } else {
    write_cover_csv(std::cout, g, cover);
  }
  return kExitOk;
}

int cmd_roc(const RocArgs& a) {
  const PairScoreSet scores =
      join_labels(read_pair_scores_csv(a.scores), read_pair_labels_csv(a.labels));
  const Direction dir = a.lower_is_similar ? Direction::kLowerIsSimilar : Direction::kHigherIsSimilar;
  if (a.target_fp || a.target_fn) {
    if (a.target_fp && a.target_fn) throw InvalidInput("give one of --target-fp, --target-fn");
    CalibrationTarget t;
    t.kind = a.target_fp ? CalibrationTarget::Kind::kMaxFp : CalibrationTarget::Kind::kMaxFn;
    t.rate = a.target_fp ? *a.target_fp : *a.target_fn;
    const Calibration c = calibrate_threshold(scores, dir, t);
    csv::Writer w(std::cout);
    w.values("threshold", "fp_rate", "fn_rate");
    w.values(c.threshold, c.fp_rate, c.fn_rate);
    return kExitOk;
  }
  const RocCurve curve = roc_sweep(scores, dir);
  write_roc_csv(std::cout, curve);
  std::cerr << fmt::format("auc={:.6f} pairs={}\n", roc_auc(curve), scores.size());
  return kExitOk;
}

namespace {

// Items named by any input, with whatever features the inputs provide.
std::map<std::string, ItemMeta> load_items(const PipelineArgs& a) {
  std::map<std::string, ItemMeta> items;
  if (!a.metadata.empty()) items = read_metadata_csv(a.metadata);
  auto item = [&](const std::string& id) -> ItemMeta& {
    auto& m = items[id];
    m.item_id = id;
    return m;
  };
  if (!a.phash.empty()) {
    for (auto& [id, h] : read_phash_csv(a.phash)) item(id).phash = h;
  }
  if (!a.gist.empty()) {
    for (auto& [id, v] : read_feature_csv(a.gist)) item(id).gist = v;
  }
  return items;
}

PairScoreSet scores_of(const std::vector<LabeledEvidence>& corpus,
                       std::optional<double> (*pick)(const PairEvidence&)) {
  PairScoreSet out;
  for (const auto& c : corpus) {
    if (auto s = pick(c.evidence)) out.push_back({c.item_a, c.item_b, *s, c.similar});
  }
  return out;
}

double calibrated(const PairScoreSet& s, CalibrationTarget t, std::string_view what) {
  if (s.empty()) throw InvalidInput(fmt::format("no {} scores to calibrate on", what));
  return calibrate_threshold(s, Direction::kHigherIsSimilar, t).threshold;
}

}  // namespace

int cmd_pipeline(const PipelineArgs& a) {
  const auto labels = read_pair_labels_csv(a.labels);
  const auto items = load_items(a);
  SiftMatchTable sift;
  if (!a.sift.empty()) sift = read_sift_csv(a.sift);

  std::vector<LabeledEvidence> corpus;
  for (const auto& [key, similar] : labels) {
    auto find = [&](const std::string& id) {
      auto it = items.find(id);
      return it == items.end() ? ItemMeta{id, {}, {}, {}, {}} : it->second;
    };
    corpus.push_back(LabeledEvidence{key.first, key.second, similar,
                                     make_evidence(find(key.first), find(key.second), &sift)});
  }

  Thresholds t;
  if (a.t_gist) {
    t.gist = *a.t_gist;
  } else {
    // GIST rejects when S < T, so "flag iff S > tau" becomes T = next above tau.
    const double tau = calibrated(
        scores_of(corpus, [](const PairEvidence& e) { return e.gist_score; }),
        {CalibrationTarget::Kind::kMaxFn, a.target_fn_gist}, "gist");
    t.gist = std::nextafter(tau, INFINITY);
  }
  if (a.t_phash) {
    t.phash = *a.t_phash;
  } else {
    t.phash = calibrated(scores_of(corpus,
                                   [](const PairEvidence& e) -> std::optional<double> {
                                     if (!e.phash_score) return std::nullopt;
                                     return static_cast<double>(*e.phash_score);
                                   }),
                         {CalibrationTarget::Kind::kMaxFp, a.target_fp_phash}, "phash");
  }
  if (a.t_sift) {
    t.sift = *a.t_sift;
  } else {
    // Pairs with too few matches can never be flagged; they sit at -inf.
    t.sift = calibrated(scores_of(corpus,
                                  [](const PairEvidence& e) -> std::optional<double> {
                                    if (!e.sift) return std::nullopt;
                                    auto s = sift_similarity(e.sift->m, e.sift->m_prime);
                                    return s ? *s : -INFINITY;
                                  }),
                        {CalibrationTarget::Kind::kMaxFp, a.target_fp_sift}, "sift");
  }

  PipelineOptions opts;
  opts.gates = Gates{a.max_distance, a.max_age};
  opts.gist_force_uncertain = a.gist_uncertain;
  const CostModel cost{a.c_phash, a.c_gist, a.c_sift};
  const PipelineReport report = pipeline_report(corpus, t, cost, opts);
  std::cerr << fmt::format("thresholds: gist={} phash={} sift={}\n", t.gist, t.phash, t.sift);
  if (a.format == "text") {
    write_report_text(std::cout, report);
  } else {
    write_report_csv(std::cout, report);
  }
  return kExitOk;
}

int cmd_phash(const PhashArgs& a) {
  std::vector<PHash64> hashes;
  for (const auto& path : a.images) hashes.push_back(phash_compute(read_pgm(path)));
  csv::Writer w(std::cout);
  if (!a.pairwise) {
    w.values("file", "phash");
    for (std::size_t i = 0; i < hashes.size(); ++i) w.values(a.images[i], hashes[i].hex());
    return kExitOk;
  }
  w.values("file_a", "file_b", "hamming", "similarity");
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    for (std::size_t j = i + 1; j < hashes.size(); ++j) {
      w.values(a.images[i], a.images[j], hamming_distance(hashes[i], hashes[j]),
               phash_similarity(hashes[i], hashes[j]));
    }
  }
  return kExitOk;
}

int cmd_chunk(const ChunkArgs& a) {
  std::vector<Blob> blobs;
  for (const auto& path : a.files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path));
    blobs.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const ChunkDedupStats s = chunk_dedup_stats(blobs, a.chunk_size);
  csv::Writer w(std::cout);
  w.values("files", "chunk_size", "total_bytes", "duplicate_bytes", "chunks", "duplicate_chunks",
           "ratio");
  w.values(a.files.size(), a.chunk_size, s.total_bytes, s.duplicate_bytes, s.chunks,
           s.duplicate_chunks, csv::format_fixed(s.ratio(), 6));
  return kExitOk;
}

}  // namespace care::cli
