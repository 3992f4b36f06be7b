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

#include "care/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "care/csv.hpp"

namespace care {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRateSlack = 1e-12;

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

bool flagged(double score, Direction dir, double threshold) {
  return dir == Direction::kHigherIsSimilar ? score > threshold : score < threshold;
}

}  // namespace

ConfusionRates confusion_rates(const std::vector<Verdict>& decisions,
                               const std::vector<bool>& labels) {
  if (decisions.size() != labels.size()) {
    throw InvalidInput(fmt::format("confusion_rates: {} decisions for {} labels",
                                   decisions.size(), labels.size()));
  }
  ConfusionRates r;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool said_similar = decisions[i] == Verdict::kSimilar;
    if (labels[i]) {
      ++r.similar_pairs;
      if (!said_similar) ++r.false_negatives;
    } else {
      ++r.dissimilar_pairs;
      if (said_similar) ++r.false_positives;
    }
  }
  r.fp_rate = ratio(r.false_positives, r.dissimilar_pairs);
  r.fn_rate = ratio(r.false_negatives, r.similar_pairs);
  return r;
}

ConfusionRates rates_at(const PairScoreSet& scores, Direction dir, double threshold) {
  std::vector<Verdict> v;
  std::vector<bool> labels;
  v.reserve(scores.size());
  labels.reserve(scores.size());
  for (const auto& p : scores) {
    v.push_back(flagged(p.score, dir, threshold) ? Verdict::kSimilar : Verdict::kNotSimilar);
    labels.push_back(p.similar);
  }
  return confusion_rates(v, labels);
}

RocCurve roc_sweep(const PairScoreSet& scores, Direction dir) {
  std::size_t n_sim = 0;
  for (const auto& p : scores) {
    if (std::isnan(p.score)) {
      throw InvalidInput(fmt::format("roc: NaN score for ({}, {})", p.item_a, p.item_b));
    }
    n_sim += p.similar ? 1 : 0;
  }
  const std::size_t n_dis = scores.size() - n_sim;
  if (n_sim == 0 || n_dis == 0) {
    throw InvalidInput("roc: need at least one similar and one dissimilar pair");
  }

  std::vector<double> sim;
  std::vector<double> dis;
  for (const auto& p : scores) (p.similar ? sim : dis).push_back(p.score);
  std::sort(sim.begin(), sim.end());
  std::sort(dis.begin(), dis.end());

  auto flagged_count = [dir](const std::vector<double>& v, double tau) {
    if (dir == Direction::kHigherIsSimilar) {
      return static_cast<std::size_t>(v.end() - std::upper_bound(v.begin(), v.end(), tau));
    }
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), tau) - v.begin());
  };

  std::vector<double> thresholds{-kInf, kInf};
  thresholds.insert(thresholds.end(), sim.begin(), sim.end());
  thresholds.insert(thresholds.end(), dis.begin(), dis.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  RocCurve c;
  c.direction = dir;
  c.points.reserve(thresholds.size());
  for (double tau : thresholds) {
    const RocPoint p{tau,
                     static_cast<double>(flagged_count(dis, tau)) / static_cast<double>(n_dis),
                     static_cast<double>(flagged_count(sim, tau)) / static_cast<double>(n_sim)};
    // A threshold that changes no verdict adds nothing; keep the lowest one.
    if (!c.points.empty() && c.points.back().fp_rate == p.fp_rate &&
        c.points.back().tp_rate == p.tp_rate) {
      continue;
    }
    c.points.push_back(p);
  }
  return c;
}

double roc_auc(const RocCurve& curve) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.points.size());
  for (const auto& p : curve.points) pts.emplace_back(p.fp_rate, p.tp_rate);
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].first - pts[i - 1].first) * 0.5 * (pts[i].second + pts[i - 1].second);
  }
  return area;
}

Calibration calibrate_threshold(const PairScoreSet& scores, Direction dir,
                                CalibrationTarget target) {
  const RocCurve curve = roc_sweep(scores, dir);
  const bool fp_target = target.kind == CalibrationTarget::Kind::kMaxFp;
  std::optional<RocPoint> best;
  double best_rate = kInf;
  for (const auto& p : curve.points) {
    const double constrained = fp_target ? p.fp_rate : 1.0 - p.tp_rate;
    best_rate = std::min(best_rate, constrained);
    if (constrained > target.rate + kRateSlack) continue;
    if (!best) {
      best = p;
    } else if (fp_target ? p.tp_rate > best->tp_rate : p.fp_rate < best->fp_rate) {
      best = p;  // points ascend in threshold, so ties keep the lower one
    }
  }
  if (!best) {
    throw UnattainableTarget(
        fmt::format("calibration target {} <= {} is unattainable; best achievable {}",
                    fp_target ? "fp" : "fn", target.rate, best_rate),
        best_rate);
  }
  return Calibration{best->threshold, best->fp_rate, 1.0 - best->tp_rate};
}

PipelineReport pipeline_report(const std::vector<LabeledEvidence>& corpus, const Thresholds& t,
                               const CostModel& cost, const PipelineOptions& opts) {
  cost.validate();
  PipelineReport r;
  r.pairs = corpus.size();
  std::vector<bool> labels;
  std::vector<Verdict> ph;
  std::vector<Verdict> gi;
  std::vector<Verdict> si;
  std::vector<Verdict> pipe;
  auto verdict = [](bool similar) { return similar ? Verdict::kSimilar : Verdict::kNotSimilar; };
  for (const auto& item : corpus) {
    const auto& e = item.evidence;
    labels.push_back(item.similar);
    r.similar_pairs += item.similar ? 1 : 0;
    ph.push_back(verdict(e.phash_score && *e.phash_score > t.phash));
    gi.push_back(verdict(e.gist_score && *e.gist_score >= t.gist));
    bool sift_yes = false;
    if (e.sift) {
      auto s = sift_similarity(e.sift->m, e.sift->m_prime);
      sift_yes = s && *s > t.sift;
    }
    si.push_back(verdict(sift_yes));
    Decision d = decide_pair(e, t, cost, opts, &r.counts);
    pipe.push_back(d.verdict);
    r.pipeline_decisions.push_back(d);
  }
  auto row = [&](std::string name, const std::vector<Verdict>& v, double c) {
    auto rates = confusion_rates(v, labels);
    r.rows.push_back(MethodRow{std::move(name), rates.fp_rate, rates.fn_rate, c});
  };
  row("phash", ph, cost.c_phash);
  row("gist", gi, cost.c_gist);
  row("sift", si, cost.c_sift);
  const double pc =
      r.counts.n1 == 0 ? 0.0 : pipeline_avg_cost(r.counts.n1, r.counts.n2, r.counts.n3, cost);
  row("pipeline", pipe, pc);
  return r;
}

namespace {

std::string rate_field(const std::optional<double>& v) {
  return v ? csv::format_fixed(*v, 6) : std::string("undefined");
}

}  // namespace

void write_report_csv(std::ostream& out, const PipelineReport& r) {
  csv::Writer w(out);
  w.values("method", "fp_rate", "fn_rate", "cost", "pairs", "n1", "n2", "n3");
  for (const auto& row : r.rows) {
    w.values(row.method, rate_field(row.fp_rate), rate_field(row.fn_rate),
             csv::format_fixed(row.cost, 4), r.pairs, r.counts.n1, r.counts.n2, r.counts.n3);
  }
}

void write_report_text(std::ostream& out, const PipelineReport& r) {
  out << fmt::format("pairs: {} ({} similar), gated: {}, N1={} N2={} N3={}\n", r.pairs,
                     r.similar_pairs, r.counts.gated, r.counts.n1, r.counts.n2, r.counts.n3);
  out << fmt::format("{:<10} {:>10} {:>10} {:>10}\n", "method", "fp", "fn", "cost");
  for (const auto& row : r.rows) {
    out << fmt::format("{:<10} {:>10} {:>10} {:>10.2f}\n", row.method, rate_field(row.fp_rate),
                       rate_field(row.fn_rate), row.cost);
  }
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  csv::Writer w(out);
  w.values("threshold", "fp_rate", "tp_rate");
  for (const auto& p : curve.points) w.values(p.threshold, p.fp_rate, p.tp_rate);
}

PairKey make_pair_key(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  return {std::string(a), std::string(b)};
}

namespace {

template <typename V, typename Parse>
std::map<PairKey, V> read_pair_values(const std::filesystem::path& path, Parse parse) {
  auto rows = csv::read_file(path, false).rows;
  if (!rows.empty() && rows.front().size() >= 3 && rows.front()[0] == "item_a") {
    rows.erase(rows.begin());
  }
  std::map<PairKey, V> out;
  for (const auto& r : rows) {
    if (r.size() < 3) {
      throw InvalidInput(fmt::format("{}: expected item_a,item_b,value", path.string()));
    }
    if (r[0] == r[1]) throw InvalidInput(fmt::format("{}: self pair '{}'", path.string(), r[0]));
    if (!out.emplace(make_pair_key(r[0], r[1]), parse(r[2])).second) {
      throw InvalidInput(fmt::format("{}: repeated pair ({}, {})", path.string(), r[0], r[1]));
    }
  }
  return out;
}

}  // namespace

std::map<PairKey, double> read_pair_scores_csv(const std::filesystem::path& path) {
  return read_pair_values<double>(path,
                                  [](const std::string& f) { return csv::parse_double(f, "score"); });
}

std::map<PairKey, bool> read_pair_labels_csv(const std::filesystem::path& path) {
  return read_pair_values<bool>(path, [](const std::string& f) {
    const auto v = csv::parse_int(f, "label");
    if (v != 0 && v != 1) throw InvalidInput(fmt::format("label must be 0 or 1, got {}", v));
    return v == 1;
  });
}

PairScoreSet join_labels(const std::map<PairKey, double>& scores,
                         const std::map<PairKey, bool>& labels) {
  PairScoreSet out;
  out.reserve(scores.size());
  for (const auto& [key, score] : scores) {
    auto it = labels.find(key);
    if (it == labels.end()) {
      throw InvalidInput(fmt::format("no label for scored pair ({}, {})", key.first, key.second));
    }
    out.push_back(ScoredPair{key.first, key.second, score, it->second});
  }
  return out;
}

}  // namespace care
