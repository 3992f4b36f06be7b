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

#include "care/detectors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "care/error.hpp"
#include "care/rng.hpp"

namespace care {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kSimilar:
      return "similar";
    case Verdict::kNotSimilar:
      return "not_similar";
    case Verdict::kUncertain:
      return "uncertain";
  }
  return "?";
}

double gist_similarity(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) {
    throw InvalidInput(fmt::format("gist: length mismatch {} vs {}", a.size(), b.size()));
  }
  if (a.size() < 2) throw InvalidInput("gist: vectors need at least 2 entries");
  const auto n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw InvalidInput("gist: non-finite feature value");
    }
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw InvalidInput("gist: score undefined for a constant feature vector");
  }
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

std::optional<double> sift_similarity(long long m_matched, long long m_refined) {
  if (m_matched < 0 || m_refined < 0) throw InvalidInput("sift: negative match count");
  if (m_refined > m_matched) {
    throw InvalidInput(
        fmt::format("sift: refined matches {} exceed matched {}", m_refined, m_matched));
  }
  if (m_matched <= kSiftMinMatches) return std::nullopt;
  return static_cast<double>(m_refined) / static_cast<double>(m_matched);
}

double oracle_pair_draw(std::uint64_t seed, MsgId a, MsgId b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return unit_interval(hash_combine(hash_combine(hash_combine(seed, 0x70a1), lo), hi));
}

double oracle_message_draw(std::uint64_t seed, MsgId id) {
  return unit_interval(hash_combine(hash_combine(seed, 0xfa15e), static_cast<std::uint64_t>(id)));
}

Verdict oracle_decide(const MessageRecord& a, const MessageRecord& b, double fp, double fn,
                      std::uint64_t seed) {
  const double u = oracle_pair_draw(seed, a.msg_id, b.msg_id);
  if (a.cluster_id == b.cluster_id) return u < fn ? Verdict::kNotSimilar : Verdict::kSimilar;
  return u < fp ? Verdict::kSimilar : Verdict::kNotSimilar;
}

AdmissionOracle::AdmissionOracle(double fp, double fn, std::uint64_t seed)
    : fp_(fp), fn_(fn), seed_(seed) {
  if (!(fp >= 0.0 && fp <= 1.0) || !(fn >= 0.0 && fn <= 1.0)) {
    throw InvalidInput(fmt::format("oracle rates must lie in [0, 1], got fp={} fn={}", fp, fn));
  }
}

}  // namespace care
