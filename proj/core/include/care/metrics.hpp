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

// Delivery statistics over simulation results.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "care/simulator.hpp"

namespace care {

/// Distinct clusters delivered at or before `up_to_tick`.
std::size_t unique_delivered(const std::vector<Delivery>& deliveries, std::int64_t up_to_tick);

/// Distinct clusters delivered over the whole run.
std::size_t unique_delivered(const std::vector<Delivery>& deliveries);

/// 100 * (u_care - u_nonre) / u_nonre; nullopt when u_nonre == 0.
std::optional<double> improvement(std::size_t u_care, std::size_t u_nonre);

struct StepPoint {
  std::int64_t tick = 0;
  std::size_t count = 0;
};

/// (tick, unique count) at every tick where the count changes, starting
/// with (0, count at tick 0).
std::vector<StepPoint> unique_over_time(const std::vector<Delivery>& deliveries);

/// Delivery time minus creation time, one per delivered message.
std::vector<double> message_latencies(const std::vector<Delivery>& deliveries);

/// Latency of the first delivery of each cluster.
std::vector<double> unique_latencies(const std::vector<Delivery>& deliveries);

struct CdfPoint {
  double latency = 0.0;
  double fraction = 0.0;
};

/// Empirical CDF: one point per distinct latency. Throws InvalidInput on
/// an empty sample.
std::vector<CdfPoint> latency_cdf(std::vector<double> latencies);

/// Median; mean of the two central values for an even count. Throws
/// InvalidInput on an empty sample.
double median(std::vector<double> values);

double mean(const std::vector<double>& values);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(const std::vector<double>& values);

}  // namespace care
