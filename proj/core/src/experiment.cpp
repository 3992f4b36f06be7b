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

#include "care/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "care/csv.hpp"
#include "care/error.hpp"
#include "care/map_graph.hpp"
#include "care/metrics.hpp"

namespace care {

WorkloadSchedule schedule_for(const ScenarioConfig& cfg) {
  if (cfg.schedule_file.empty()) return generate_schedule(cfg);
  WorkloadSchedule s = read_schedule_csv(cfg.schedule_file);
  validate_schedule(s, cfg);
  return s;
}

PairedResult paired_run(const ScenarioConfig& cfg, bool record_events) {
  require_valid(cfg);
  PairedResult r;
  r.cfg = cfg;
  r.schedule = schedule_for(cfg);
  const ScenarioMap map = build_scenario_map(cfg);
  SimOptions opts;
  opts.record_events = record_events;
  opts.router = RouterKind::kCare;
  r.care = run_simulation(cfg, r.schedule, map, opts);
  opts.router = RouterKind::kEpidemic;
  r.nonre = run_simulation(cfg, r.schedule, map, opts);
  r.u_care = unique_delivered(r.care.deliveries);
  r.u_nonre = unique_delivered(r.nonre.deliveries);
  r.improvement = improvement(r.u_care, r.u_nonre);
  return r;
}

namespace {

std::optional<double> median_or_none(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  return median(std::move(v));
}

std::string opt_field(const std::optional<double>& v) {
  return v ? csv::format_double(*v) : std::string("undefined");
}

}  // namespace

SummaryRow summarize(const PairedResult& r) {
  SummaryRow s;
  s.seed = r.cfg.rng_seed;
  s.r_sim = r.cfg.target_redundancy_Rsim;
  s.pr_disaster = r.cfg.pr_disaster;
  s.u_care = r.u_care;
  s.u_nonre = r.u_nonre;
  s.improvement = r.improvement;
  s.drops_care = r.care.counters.drops_capacity;
  s.drops_nonre = r.nonre.counters.drops_capacity;
  s.disaster_time_fraction = r.care.disaster_time_fraction;
  s.realized_redundancy = r.schedule.realized_redundancy;
  s.median_unique_latency_care = median_or_none(unique_latencies(r.care.deliveries));
  s.median_unique_latency_nonre = median_or_none(unique_latencies(r.nonre.deliveries));
  return s;
}

namespace {

const csv::Row kSummaryHeader = {"seed",
                                 "R_sim",
                                 "pr_disaster",
                                 "U_care",
                                 "U_nonre",
                                 "improvement",
                                 "drops_care",
                                 "drops_nonre",
                                 "disaster_time_fraction",
                                 "realized_redundancy",
                                 "median_unique_latency_care",
                                 "median_unique_latency_nonre"};

csv::Row summary_fields(const SummaryRow& s) {
  return {std::to_string(s.seed),
          csv::format_double(s.r_sim),
          csv::format_double(s.pr_disaster),
          std::to_string(s.u_care),
          std::to_string(s.u_nonre),
          opt_field(s.improvement),
          std::to_string(s.drops_care),
          std::to_string(s.drops_nonre),
          csv::format_double(s.disaster_time_fraction),
          csv::format_double(s.realized_redundancy),
          opt_field(s.median_unique_latency_care),
          opt_field(s.median_unique_latency_nonre)};
}

}  // namespace

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  csv::Writer w(out);
  w.row(kSummaryHeader);
  for (const auto& s : rows) w.row(summary_fields(s));
}

void write_unique_over_time_csv(std::ostream& out, const PairedResult& r) {
  csv::Writer w(out);
  w.values("tick", "count", "router");
  for (const RunResult* run : {&r.care, &r.nonre}) {
    for (const auto& p : unique_over_time(run->deliveries)) {
      w.values(p.tick, p.count, to_string(run->router));
    }
  }
}

namespace {

void write_cdf(std::ostream& out, const PairedResult& r,
               std::vector<double> (*sample)(const std::vector<Delivery>&)) {
  csv::Writer w(out);
  w.values("latency", "fraction", "router");
  for (const RunResult* run : {&r.care, &r.nonre}) {
    auto lat = sample(run->deliveries);
    if (lat.empty()) continue;
    for (const auto& p : latency_cdf(std::move(lat))) {
      w.values(p.latency, p.fraction, to_string(run->router));
    }
  }
}

}  // namespace

void write_latency_cdf_csv(std::ostream& out, const PairedResult& r) {
  write_cdf(out, r, &message_latencies);
}

void write_unique_latency_cdf_csv(std::ostream& out, const PairedResult& r) {
  write_cdf(out, r, &unique_latencies);
}

// ---- sweeps ---------------------------------------------------------------

SweepAxis parse_sweep_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw InvalidInput(fmt::format("sweep axis '{}' must look like key=v1,v2,...", text));
  }
  SweepAxis axis;
  axis.key = std::string(text.substr(0, eq));
  std::string_view rest = text.substr(eq + 1);
  // Values may be JSON arrays ("[1,2]"), so split only at top-level commas.
  int depth = 0;
  std::string cur;
  for (char c : rest) {
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      axis.values.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  axis.values.push_back(cur);
  for (const auto& v : axis.values) {
    if (v.empty()) throw InvalidInput(fmt::format("sweep axis '{}' has an empty value", text));
  }
  return axis;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw InvalidInput(fmt::format("bad seed list '{}'", text));
    }
    return v;
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    if (auto dash = item.find('-'); dash != std::string_view::npos) {
      const auto lo = number(item.substr(0, dash));
      const auto hi = number(item.substr(dash + 1));
      if (hi < lo) throw InvalidInput(fmt::format("bad seed range '{}'", item));
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(number(item));
    }
    start = end + 1;
  }
  return seeds;
}

std::vector<SweepCell> expand_grid(const ScenarioConfig& base, const SweepSpec& spec) {
  if (spec.seeds.empty()) throw InvalidInput("sweep: no seeds");
  if (spec.axes.empty()) throw InvalidInput("sweep: empty grid");
  for (const auto& a : spec.axes) {
    if (a.values.empty()) throw InvalidInput(fmt::format("sweep: axis '{}' has no values", a.key));
  }
  std::vector<SweepCell> cells;
  std::vector<std::size_t> idx(spec.axes.size(), 0);
  while (true) {
    SweepCell cell;
    cell.cfg = base;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      const auto& axis = spec.axes[a];
      const auto& value = axis.values[idx[a]];
      apply_override(cell.cfg, axis.key + "=" + value);
      cell.assignment.emplace_back(axis.key, value);
    }
    require_valid(cell.cfg);
    cells.push_back(std::move(cell));
    // Odometer increment, last axis fastest.
    std::size_t a = spec.axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < spec.axes[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) return cells;
    }
  }
}

SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec, std::size_t workers,
                      const std::function<void(std::size_t, std::size_t)>& on_done) {
  SweepResult result;
  result.cells = expand_grid(base, spec);
  const std::size_t n_seeds = spec.seeds.size();
  const std::size_t total = result.cells.size() * n_seeds;
  result.rows.resize(total);

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t done = 0;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const std::size_t cell = job / n_seeds;
      try {
        ScenarioConfig cfg = result.cells[cell].cfg;
        cfg.rng_seed = spec.seeds[job % n_seeds];
        result.rows[job] = SweepRow{cell, summarize(paired_run(cfg, false))};
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
      std::lock_guard lock(mu);
      ++done;
      if (on_done) on_done(done, total);
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(workers, total));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

namespace {

struct CellStats {
  std::vector<double> improvements;
  std::vector<double> fractions;
  std::vector<double> u_care;
  std::vector<double> u_nonre;
};

std::vector<CellStats> cell_stats(const SweepResult& r) {
  std::vector<CellStats> stats(r.cells.size());
  for (const auto& row : r.rows) {
    auto& s = stats[row.cell];
    if (row.summary.improvement) s.improvements.push_back(*row.summary.improvement);
    s.fractions.push_back(row.summary.disaster_time_fraction);
    s.u_care.push_back(static_cast<double>(row.summary.u_care));
    s.u_nonre.push_back(static_cast<double>(row.summary.u_nonre));
  }
  return stats;
}

std::string mean_field(const std::vector<double>& v) {
  return v.empty() ? std::string("undefined") : csv::format_double(mean(v));
}

std::string stddev_field(const std::vector<double>& v) {
  return v.empty() ? std::string("undefined") : csv::format_double(stddev(v));
}

}  // namespace

void write_sweep_summary_csv(std::ostream& out, const SweepResult& r) {
  csv::Writer w(out);
  const auto stats = cell_stats(r);
  csv::Row header{"cell"};
  if (!r.cells.empty()) {
    for (const auto& [key, value] : r.cells.front().assignment) header.push_back(key);
  }
  header.insert(header.end(), kSummaryHeader.begin(), kSummaryHeader.end());
  header.push_back("cell_mean_improvement");
  header.push_back("cell_stddev_improvement");
  w.row(header);
  for (const auto& row : r.rows) {
    csv::Row f{std::to_string(row.cell)};
    for (const auto& [key, value] : r.cells[row.cell].assignment) f.push_back(value);
    auto s = summary_fields(row.summary);
    f.insert(f.end(), s.begin(), s.end());
    f.push_back(mean_field(stats[row.cell].improvements));
    f.push_back(stddev_field(stats[row.cell].improvements));
    w.row(f);
  }
}

void write_sweep_cells_csv(std::ostream& out, const SweepResult& r) {
  csv::Writer w(out);
  const auto stats = cell_stats(r);
  csv::Row header{"cell"};
  if (!r.cells.empty()) {
    for (const auto& [key, value] : r.cells.front().assignment) header.push_back(key);
  }
  for (const char* h : {"seeds", "mean_improvement", "stddev_improvement",
                        "mean_disaster_time_fraction", "mean_U_care", "mean_U_nonre"}) {
    header.push_back(h);
  }
  w.row(header);
  for (std::size_t c = 0; c < r.cells.size(); ++c) {
    csv::Row f{std::to_string(c)};
    for (const auto& [key, value] : r.cells[c].assignment) f.push_back(value);
    f.push_back(std::to_string(stats[c].u_care.size()));
    f.push_back(mean_field(stats[c].improvements));
    f.push_back(stddev_field(stats[c].improvements));
    f.push_back(mean_field(stats[c].fractions));
    f.push_back(mean_field(stats[c].u_care));
    f.push_back(mean_field(stats[c].u_nonre));
    w.row(f);
  }
}

}  // namespace care
