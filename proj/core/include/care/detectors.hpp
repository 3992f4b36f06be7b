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

// Similarity scores and the probabilistic oracle detector.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "care/config.hpp"

namespace care {

enum class Verdict { kSimilar, kNotSimilar, kUncertain };

std::string_view to_string(Verdict v);

using FeatureVector = std::vector<double>;

/// Pearson correlation of two scene descriptors, in [-1, 1]. Throws
/// InvalidInput on length mismatch, length < 2, non-finite entries or a
/// constant vector (the score is undefined there).
double gist_similarity(const FeatureVector& a, const FeatureVector& b);

/// Minimum matched-keypoint count above which a SIFT ratio is meaningful.
inline constexpr int kSiftMinMatches = 8;

/// m_refined / m_matched, or nullopt when m_matched <= 8. Throws
/// InvalidInput when m_refined > m_matched or either is negative.
std::optional<double> sift_similarity(long long m_matched, long long m_refined);

/// Uniform draw in [0, 1) keyed by (seed, unordered id pair).
double oracle_pair_draw(std::uint64_t seed, MsgId a, MsgId b);

/// Uniform draw in [0, 1) keyed by (seed, one message id).
double oracle_message_draw(std::uint64_t seed, MsgId id);

/// Ground truth is cluster equality. Similar pairs come back NotSimilar with
/// probability fn, dissimilar pairs Similar with probability fp. The draw is
/// a pure function of (seed, unordered pair), so the verdict for a pair is
/// the same wherever and however often it is asked.
Verdict oracle_decide(const MessageRecord& a, const MessageRecord& b, double fp, double fn,
                      std::uint64_t seed);

/// Buffer-admission view of the same oracle, used by the router.
///
/// A candidate is judged Similar to the buffer when some buffered message
/// of its cluster is detected (per-pair FN draw as in oracle_decide). When
/// no buffered message shares its cluster and the buffer is non-empty it is
/// falsely judged Similar with probability fp, drawn once per candidate id,
/// so the false alarm rate applies per received message rather than per
/// buffered comparison.
class AdmissionOracle {
 public:
  AdmissionOracle(double fp, double fn, std::uint64_t seed);

  double fp() const { return fp_; }
  double fn() const { return fn_; }

  bool detects(MsgId candidate, MsgId same_cluster_buffered) const {
    return oracle_pair_draw(seed_, candidate, same_cluster_buffered) >= fn_;
  }
  bool false_alarm(MsgId candidate) const {
    return oracle_message_draw(seed_, candidate) < fp_;
  }

 private:
  double fp_;
  double fn_;
  std::uint64_t seed_;
};

}  // namespace care
