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

// Detector evaluation against ground-truth pair labels: confusion rates,
// threshold sweeps, calibration and the per-method comparison table.
//
// One threshold convention throughout: with higher-is-similar scores a pair
// is flagged Similar iff score > tau; with lower-is-similar scores iff
// score < tau.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "care/detectors.hpp"
#include "care/error.hpp"
#include "care/pipeline.hpp"

namespace care {

struct ScoredPair {
  std::string item_a;
  std::string item_b;
  double score = 0.0;
  bool similar = false;  // ground truth
};

using PairScoreSet = std::vector<ScoredPair>;

struct ConfusionRates {
  std::optional<double> fp_rate;  // undefined without dissimilar pairs
  std::optional<double> fn_rate;  // undefined without similar pairs
  std::size_t similar_pairs = 0;
  std::size_t dissimilar_pairs = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

/// Any verdict other than Similar counts as NotSimilar. Throws when the two
/// vectors differ in length.
ConfusionRates confusion_rates(const std::vector<Verdict>& decisions,
                               const std::vector<bool>& labels);

enum class Direction { kHigherIsSimilar, kLowerIsSimilar };

struct RocPoint {
  double threshold = 0.0;
  double fp_rate = 0.0;
  double tp_rate = 0.0;
};

struct RocCurve {
  Direction direction = Direction::kHigherIsSimilar;
  std::vector<RocPoint> points;  // ascending threshold, first at -inf
};

/// Rates at one threshold.
ConfusionRates rates_at(const PairScoreSet& scores, Direction dir, double threshold);

/// Thresholds: -inf, every distinct score, +inf; a threshold whose rates
/// equal those of the next lower one is omitted, so all-equal scores give a
/// two-point curve. Throws InvalidInput when either class is empty.
RocCurve roc_sweep(const PairScoreSet& scores, Direction dir);

/// Trapezoidal area under the curve in (fp, tp) space.
double roc_auc(const RocCurve& curve);

struct CalibrationTarget {
  enum class Kind { kMaxFp, kMaxFn };
  Kind kind = Kind::kMaxFp;
  double rate = 0.0;
};

struct Calibration {
  double threshold = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
};

class UnattainableTarget : public InvalidInput {
 public:
  UnattainableTarget(const std::string& what, double best_rate)
      : InvalidInput(what), best_rate_(best_rate) {}
  double best_rate() const { return best_rate_; }

 private:
  double best_rate_;
};

/// fp target: among thresholds with fp_rate <= x, the one with the highest
/// tp_rate. fn target: among thresholds with fn_rate <= x, the one with the
/// lowest fp_rate. Remaining ties go to the lower threshold.
Calibration calibrate_threshold(const PairScoreSet& scores, Direction dir,
                                CalibrationTarget target);

/// One pair with all the evidence the three methods look at.
struct LabeledEvidence {
  std::string item_a;
  std::string item_b;
  bool similar = false;
  PairEvidence evidence;
};

struct MethodRow {
  std::string method;
  std::optional<double> fp_rate;
  std::optional<double> fn_rate;
  double cost = 0.0;  // normalized units per compared pair
};

struct PipelineReport {
  std::vector<MethodRow> rows;  // phash, gist, sift, pipeline
  StageCounts counts;
  std::size_t pairs = 0;
  std::size_t similar_pairs = 0;
  std::vector<Decision> pipeline_decisions;  // one per pair, input order
};

/// Singleton rules: pHash Similar iff S_ph > T_ph; GIST Similar iff
/// S_gist >= T_gist (it only rules pairs out); SIFT Similar iff m > 8 and
/// S_sift > T_sift. Missing scores count as NotSimilar. The pipeline row
/// uses decide_pair per pair and pipeline_avg_cost on the observed counts
/// (cost 0 when no pair passed the gate).
PipelineReport pipeline_report(const std::vector<LabeledEvidence>& corpus, const Thresholds& t,
                               const CostModel& cost, const PipelineOptions& opts = {});

void write_report_csv(std::ostream& out, const PipelineReport& r);
void write_report_text(std::ostream& out, const PipelineReport& r);
void write_roc_csv(std::ostream& out, const RocCurve& curve);

/// Unordered item pair, stored with first <= second.
using PairKey = std::pair<std::string, std::string>;
PairKey make_pair_key(std::string_view a, std::string_view b);

/// item_a,item_b,score (optional header). Repeated pairs are rejected.
std::map<PairKey, double> read_pair_scores_csv(const std::filesystem::path& path);

/// item_a,item_b,label with label 0/1 (optional header).
std::map<PairKey, bool> read_pair_labels_csv(const std::filesystem::path& path);

/// Attaches labels to scores. Throws InvalidInput when a scored pair has no
/// label.
PairScoreSet join_labels(const std::map<PairKey, double>& scores,
                         const std::map<PairKey, bool>& labels);

}  // namespace care
