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

#include "care/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "care/error.hpp"

namespace care {

std::size_t unique_delivered(const std::vector<Delivery>& deliveries, std::int64_t up_to_tick) {
  std::unordered_set<ClusterId> seen;
  for (const auto& d : deliveries) {
    if (d.tick <= up_to_tick) seen.insert(d.cluster_id);
  }
  return seen.size();
}

std::size_t unique_delivered(const std::vector<Delivery>& deliveries) {
  std::unordered_set<ClusterId> seen;
  for (const auto& d : deliveries) seen.insert(d.cluster_id);
  return seen.size();
}

std::optional<double> improvement(std::size_t u_care, std::size_t u_nonre) {
  if (u_nonre == 0) return std::nullopt;
  return 100.0 * (static_cast<double>(u_care) - static_cast<double>(u_nonre)) /
         static_cast<double>(u_nonre);
}

std::vector<StepPoint> unique_over_time(const std::vector<Delivery>& deliveries) {
  std::vector<const Delivery*> sorted;
  sorted.reserve(deliveries.size());
  for (const auto& d : deliveries) sorted.push_back(&d);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Delivery* a, const Delivery* b) { return a->tick < b->tick; });
  std::vector<StepPoint> out;
  std::unordered_set<ClusterId> seen;
  std::size_t i = 0;
  if (sorted.empty() || sorted.front()->tick > 0) out.push_back({0, 0});
  while (i < sorted.size()) {
    const std::int64_t tick = sorted[i]->tick;
    const std::size_t before = seen.size();
    for (; i < sorted.size() && sorted[i]->tick == tick; ++i) seen.insert(sorted[i]->cluster_id);
    if (seen.size() != before || out.empty()) out.push_back({tick, seen.size()});
  }
  return out;
}

std::vector<double> message_latencies(const std::vector<Delivery>& deliveries) {
  std::vector<double> out;
  out.reserve(deliveries.size());
  for (const auto& d : deliveries) out.push_back(d.time - d.created_at);
  return out;
}

std::vector<double> unique_latencies(const std::vector<Delivery>& deliveries) {
  std::vector<double> out;
  std::unordered_set<ClusterId> seen;
  for (const auto& d : deliveries) {
    if (seen.insert(d.cluster_id).second) out.push_back(d.time - d.created_at);
  }
  return out;
}

std::vector<CdfPoint> latency_cdf(std::vector<double> latencies) {
  if (latencies.empty()) throw InvalidInput("latency_cdf: no deliveries");
  std::sort(latencies.begin(), latencies.end());
  std::vector<CdfPoint> out;
  const auto n = static_cast<double>(latencies.size());
  for (std::size_t i = 0; i < latencies.size(); ++i) {
    if (i + 1 < latencies.size() && latencies[i + 1] == latencies[i]) continue;
    out.push_back({latencies[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace care
