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

#include "care/simulator.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <queue>

#include <fmt/format.h>

#include "care/contacts.hpp"
#include "care/csv.hpp"
#include "care/error.hpp"
#include "care/mobility.hpp"
#include "care/rng.hpp"

namespace care {

std::string_view to_string(RouterKind r) {
  return r == RouterKind::kCare ? "care" : "nonre";
}

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::kGen:
      return "gen";
    case EventType::kSend:
      return "send";
    case EventType::kDeliver:
      return "deliver";
    case EventType::kDropCapacity:
      return "drop_capacity";
    case EventType::kRejectDup:
      return "reject_dup";
    case EventType::kRejectRedundant:
      return "reject_redundant";
    case EventType::kRejectFp:
      return "reject_fp";
  }
  return "?";
}

std::unique_ptr<AdmissionDetector> make_detector(const ScenarioConfig& cfg) {
  if (cfg.detector_kind == DetectorKind::kNeverSimilar) {
    return std::make_unique<NeverSimilarDetector>();
  }
  return std::make_unique<OracleAdmissionDetector>(
      AdmissionOracle(cfg.detector_fp, cfg.detector_fn, stream_seed(cfg.rng_seed, "detector")));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Link {
  double rate = 0.0;
  bool busy = false;
  MessageRecord msg;
  double finish = 0.0;
  std::uint64_t serial = 0;  // identifies the transfer in the completion queue
  // Buffer versions seen when the link last found nothing to send.
  std::uint64_t idle_from = ~std::uint64_t{0};
  std::uint64_t idle_to = ~std::uint64_t{0};
};

// Pending completion; equal finish times resolve in link-key order.
struct Completion {
  double finish;
  std::pair<NodeId, NodeId> key;
  std::uint64_t serial;
  bool operator>(const Completion& o) const {
    return finish != o.finish ? finish > o.finish : key > o.key;
  }
};

class Engine {
 public:
  Engine(const ScenarioConfig& cfg, const WorkloadSchedule& schedule, const ScenarioMap& map,
         const SimOptions& opts)
      : cfg_(cfg), schedule_(schedule), map_(map), opts_(opts), specs_(build_node_specs(cfg)) {
    require_valid(cfg);
    validate_schedule(schedule, cfg);
    if (opts.router == RouterKind::kCare) {
      if (opts.detector) {
        detector_ = opts.detector;
      } else {
        owned_detector_ = make_detector(cfg);
        detector_ = owned_detector_.get();
      }
    }
    gateway_ = gateway_id(cfg);
    vehicle_ = vehicle_id(cfg);
    for (const auto& s : specs_) {
      buffers_.emplace_back(s.buffer_capacity);
      versions_.push_back(0);
      ranges_.push_back(s.radio_range);
      rngs_.emplace_back(cfg.rng_seed, "mobility", static_cast<std::uint64_t>(s.node_id));
    }
    for (const auto& s : specs_) {
      Rng& rng = rngs_[static_cast<std::size_t>(s.node_id)];
      switch (s.role) {
        case Role::kPerson:
          mobility_.push_back(init_pedestrian(s.node_id, map, cfg, rng));
          break;
        case Role::kVehicle:
          mobility_.push_back(init_vehicle(s.node_id, map, cfg, rng));
          break;
        case Role::kGateway:
          mobility_.push_back(init_static(s.node_id, s.role, map, map.gateway_vertex));
          break;
      }
    }
    result_.router = opts.router;
  }

  RunResult run() {
    const auto n_ticks =
        static_cast<std::int64_t>(std::ceil(cfg_.duration_T / cfg_.dt - 1e-9));
    std::vector<NodePair> active;
    std::vector<Point> positions(mobility_.size());
    std::int64_t in_region = 0;
    for (tick_ = 0; tick_ < n_ticks; ++tick_) {
      const double t0 = static_cast<double>(tick_) * cfg_.dt;
      const bool last = tick_ + 1 == n_ticks;
      const double t1 = last ? cfg_.duration_T : static_cast<double>(tick_ + 1) * cfg_.dt;

      for (std::size_t i = 0; i < mobility_.size(); ++i) positions[i] = mobility_[i].position;
      if (cfg_.disaster_region.contains(positions[static_cast<std::size_t>(vehicle_)])) {
        ++in_region;
      }
      auto now_active = detect_contacts(positions, ranges_);
      update_links(contact_delta(active, now_active));
      active = std::move(now_active);

      run_events(t0, t1, last);

      for (auto& m : mobility_) {
        Rng& rng = rngs_[static_cast<std::size_t>(m.node_id)];
        if (m.role == Role::kPerson) {
          pedestrian_tick(m, map_, cfg_, rng, cfg_.dt);
        } else if (m.role == Role::kVehicle) {
          vehicle_tick(m, map_, cfg_, rng, cfg_.dt);
        }
      }
    }
    result_.ticks = n_ticks;
    result_.disaster_time_fraction =
        n_ticks == 0 ? 0.0 : static_cast<double>(in_region) / static_cast<double>(n_ticks);
    for (const auto& b : buffers_) {
      result_.final_buffers.emplace_back(b.queue().begin(), b.queue().end());
    }
    return std::move(result_);
  }

 private:
  void update_links(const ContactDelta& d) {
    for (const auto& [a, b] : d.ended) {
      for (auto key : {std::pair{a, b}, std::pair{b, a}}) {
        auto it = links_.find(key);
        if (it == links_.end()) continue;
        if (it->second.busy) ++result_.counters.transfers_aborted;
        links_.erase(it);
      }
    }
    for (const auto& [a, b] : d.started) {
      ++result_.counters.contacts;
      const auto& sa = specs_[static_cast<std::size_t>(a)];
      const auto& sb = specs_[static_cast<std::size_t>(b)];
      const double rate = std::min(sa.link_rate, sb.link_rate);
      if (a != gateway_) links_[{a, b}].rate = rate;
      if (b != gateway_) links_[{b, a}].rate = rate;
    }
  }

  void start_idle_links(double now) {
    for (auto& [key, link] : links_) {
      if (link.busy) continue;
      const auto from_ver = versions_[static_cast<std::size_t>(key.first)];
      const auto to_ver = versions_[static_cast<std::size_t>(key.second)];
      if (link.idle_from == from_ver && link.idle_to == to_ver) continue;
      const auto& from = buffers_[static_cast<std::size_t>(key.first)];
      const auto& to = buffers_[static_cast<std::size_t>(key.second)];
      const MessageRecord* m = next_to_send(from, to);
      if (!m) {
        link.idle_from = from_ver;
        link.idle_to = to_ver;
        continue;
      }
      link.busy = true;
      link.msg = *m;
      link.finish = now + static_cast<double>(m->size) * 8.0 / link.rate;
      link.serial = ++serial_;
      pending_.push(Completion{link.finish, key, link.serial});
    }
  }

  // Earliest live completion, discarding entries of aborted links.
  Link* next_completion(std::pair<NodeId, NodeId>& key) {
    while (!pending_.empty()) {
      const Completion& c = pending_.top();
      auto it = links_.find(c.key);
      if (it != links_.end() && it->second.busy && it->second.serial == c.serial) {
        key = c.key;
        return &it->second;
      }
      pending_.pop();
    }
    return nullptr;
  }

  void run_events(double t0, double t1, bool last) {
    const auto& entries = schedule_.entries;
    double now = t0;
    while (true) {
      start_idle_links(now);
      double gen_t = kInf;
      if (next_gen_ < entries.size()) {
        const double c = entries[next_gen_].created_at;
        if (c < t1 || (last && c <= t1)) gen_t = std::max(c, now);
      }
      std::pair<NodeId, NodeId> best_key;
      Link* best = next_completion(best_key);
      const double fin_t = best ? best->finish : kInf;
      if (gen_t == kInf && fin_t > t1) break;
      if (gen_t <= fin_t) {
        now = gen_t;
        const MessageRecord& m = entries[next_gen_++];
        ++result_.counters.generated;
        log(EventType::kGen, m.owner, m);
        admit(m.owner, m, now);
      } else {
        now = fin_t;
        pending_.pop();
        complete(best_key.first, best_key.second, *best, now);
      }
    }
  }

  void complete(NodeId sender, NodeId receiver, Link& link, double now) {
    link.busy = false;
    const MessageRecord msg = link.msg;
    if (!buffers_[static_cast<std::size_t>(sender)].contains(msg.msg_id)) {
      ++result_.counters.transfers_aborted;
      return;
    }
    ++result_.counters.transfers_completed;
    log(EventType::kSend, receiver, msg);
    admit(receiver, msg, now);
  }

  void admit(NodeId node, const MessageRecord& m, double now) {
    NodeBuffer& buf = buffers_[static_cast<std::size_t>(node)];
    ++versions_[static_cast<std::size_t>(node)];
    AdmitResult r;
    if (node == gateway_ || opts_.router == RouterKind::kEpidemic) {
      r = admit_epidemic(buf, m);
    } else {
      r = admit_care(buf, m, *detector_);
    }
    for (const auto& d : r.dropped) {
      ++result_.counters.drops_capacity;
      log(EventType::kDropCapacity, node, d);
    }
    switch (r.status) {
      case AdmitStatus::kAccepted:
        if (node == gateway_) {
          log(EventType::kDeliver, node, m);
          result_.deliveries.push_back(Delivery{now, tick_, m.msg_id, m.cluster_id, m.created_at});
        }
        break;
      case AdmitStatus::kRejectedDuplicate:
        ++result_.counters.rejects_dup;
        log(EventType::kRejectDup, node, m);
        break;
      case AdmitStatus::kRejectedRedundant:
        ++result_.counters.rejects_redundant;
        log(EventType::kRejectRedundant, node, m);
        break;
      case AdmitStatus::kRejectedFp:
        ++result_.counters.rejects_fp;
        log(EventType::kRejectFp, node, m);
        break;
      case AdmitStatus::kRejectedTooLarge:
        ++result_.counters.drops_capacity;
        log(EventType::kDropCapacity, node, m);
        break;
    }
  }

  void log(EventType type, NodeId node, const MessageRecord& m) {
    if (!opts_.record_events) return;
    result_.events.push_back(LogEvent{tick_, type, node, m.msg_id, m.cluster_id});
  }

  const ScenarioConfig& cfg_;
  const WorkloadSchedule& schedule_;
  const ScenarioMap& map_;
  SimOptions opts_;
  std::vector<NodeSpec> specs_;
  std::unique_ptr<AdmissionDetector> owned_detector_;
  const AdmissionDetector* detector_ = nullptr;
  NodeId gateway_ = 0;
  NodeId vehicle_ = 0;
  std::vector<NodeBuffer> buffers_;
  std::vector<double> ranges_;
  std::vector<Rng> rngs_;
  std::vector<MobilityState> mobility_;
  std::map<std::pair<NodeId, NodeId>, Link> links_;
  std::priority_queue<Completion, std::vector<Completion>, std::greater<>> pending_;
  std::uint64_t serial_ = 0;
  std::vector<std::uint64_t> versions_;  // bumped whenever a buffer may have changed
  std::size_t next_gen_ = 0;
  std::int64_t tick_ = 0;
  RunResult result_;
};

}  // namespace

RunResult run_simulation(const ScenarioConfig& cfg, const WorkloadSchedule& schedule,
                         const ScenarioMap& map, const SimOptions& opts) {
  return Engine(cfg, schedule, map, opts).run();
}

void write_event_log_csv(std::ostream& out, const std::vector<LogEvent>& events) {
  csv::Writer w(out);
  w.values("tick", "event", "node", "msg_id", "cluster_id");
  for (const auto& e : events) w.values(e.tick, to_string(e.type), e.node, e.msg_id, e.cluster_id);
}

}  // namespace care
