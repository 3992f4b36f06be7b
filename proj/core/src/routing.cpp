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

#include "care/routing.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "care/error.hpp"

namespace care {

const std::vector<MsgId>& NodeBuffer::cluster_members(ClusterId c) const {
  static const std::vector<MsgId> kNone;
  auto it = clusters_.find(c);
  return it == clusters_.end() ? kNone : it->second;
}

void NodeBuffer::push_back(const MessageRecord& m) {
  if (ids_.contains(m.msg_id)) {
    throw InvalidInput(fmt::format("buffer already holds message {}", m.msg_id));
  }
  if (m.size > free_bytes()) {
    throw InvalidInput(fmt::format("message {} ({} bytes) does not fit", m.msg_id, m.size));
  }
  queue_.push_back(m);
  ids_.insert(m.msg_id);
  clusters_[m.cluster_id].push_back(m.msg_id);
  occupied_ += m.size;
}

MessageRecord NodeBuffer::pop_front() {
  if (queue_.empty()) throw InvalidInput("pop_front on an empty buffer");
  MessageRecord m = queue_.front();
  queue_.pop_front();
  ids_.erase(m.msg_id);
  auto it = clusters_.find(m.cluster_id);
  auto& members = it->second;
  members.erase(std::find(members.begin(), members.end(), m.msg_id));
  if (members.empty()) clusters_.erase(it);
  occupied_ -= m.size;
  return m;
}

std::string_view to_string(AdmitStatus s) {
  switch (s) {
    case AdmitStatus::kAccepted:
      return "accepted";
    case AdmitStatus::kRejectedDuplicate:
      return "reject_dup";
    case AdmitStatus::kRejectedRedundant:
      return "reject_redundant";
    case AdmitStatus::kRejectedFp:
      return "reject_fp";
    case AdmitStatus::kRejectedTooLarge:
      return "drop_capacity";
  }
  return "?";
}

AdmitResult admit_epidemic(NodeBuffer& buffer, const MessageRecord& msg) {
  AdmitResult r;
  if (buffer.contains(msg.msg_id)) {
    r.status = AdmitStatus::kRejectedDuplicate;
    return r;
  }
  if (msg.size > buffer.capacity()) {
    r.status = AdmitStatus::kRejectedTooLarge;
    return r;
  }
  while (buffer.free_bytes() < msg.size) r.dropped.push_back(buffer.pop_front());
  buffer.push_back(msg);
  return r;
}

Redundancy OracleAdmissionDetector::check(const NodeBuffer& buffer,
                                          const MessageRecord& candidate) const {
  if (buffer.empty()) return Redundancy::kNone;
  const auto& same = buffer.cluster_members(candidate.cluster_id);
  if (same.empty()) {
    return oracle_.false_alarm(candidate.msg_id) ? Redundancy::kFalsePositive : Redundancy::kNone;
  }
  for (MsgId other : same) {
    if (oracle_.detects(candidate.msg_id, other)) return Redundancy::kRedundant;
  }
  return Redundancy::kNone;
}

Redundancy PairwiseOracleDetector::check(const NodeBuffer& buffer,
                                         const MessageRecord& candidate) const {
  bool false_alarm = false;
  for (const auto& m : buffer.queue()) {
    if (oracle_decide(candidate, m, fp_, fn_, seed_) != Verdict::kSimilar) continue;
    if (m.cluster_id == candidate.cluster_id) return Redundancy::kRedundant;
    false_alarm = true;
  }
  return false_alarm ? Redundancy::kFalsePositive : Redundancy::kNone;
}

AdmitResult admit_care(NodeBuffer& buffer, const MessageRecord& msg,
                       const AdmissionDetector& detector, CareStats* stats) {
  if (buffer.contains(msg.msg_id)) return AdmitResult{AdmitStatus::kRejectedDuplicate, {}};
  switch (detector.check(buffer, msg)) {
    case Redundancy::kRedundant:
      buffer.mark_refused(msg.msg_id);
      if (stats) ++stats->rejected_redundant;
      return AdmitResult{AdmitStatus::kRejectedRedundant, {}};
    case Redundancy::kFalsePositive:
      buffer.mark_refused(msg.msg_id);
      if (stats) ++stats->rejected_fp;
      return AdmitResult{AdmitStatus::kRejectedFp, {}};
    case Redundancy::kNone:
      break;
  }
  return admit_epidemic(buffer, msg);
}

std::vector<MsgId> summary_exchange(const NodeBuffer& from, const NodeBuffer& to) {
  std::vector<MsgId> out;
  for (const auto& m : from.queue()) {
    if (!to.contains(m.msg_id) && !to.refused(m.msg_id)) out.push_back(m.msg_id);
  }
  return out;
}

const MessageRecord* next_to_send(const NodeBuffer& from, const NodeBuffer& to) {
  for (const auto& m : from.queue()) {
    if (!to.contains(m.msg_id) && !to.refused(m.msg_id)) return &m;
  }
  return nullptr;
}

TransferStatus transfer_tick(TransferSession& s, double dt, bool contact_alive) {
  if (!(s.rate > 0.0)) throw InvalidInput("transfer: rate must be > 0");
  if (!contact_alive) {
    s.bytes_sent = 0.0;
    return TransferStatus::kAborted;
  }
  const auto size = static_cast<double>(s.msg.size);
  s.bytes_sent += s.rate * dt / 8.0;
  // Half a bit of slack absorbs rounding in the accumulated byte count.
  if (s.bytes_sent + 1.0 / 16.0 >= size) {
    s.bytes_sent = size;
    return TransferStatus::kDelivered;
  }
  return TransferStatus::kInProgress;
}

}  // namespace care
