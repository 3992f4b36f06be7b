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

// Node buffers, epidemic and content-aware admission, and atomic transfers.

#pragma once

#include <cstddef>
#include <deque>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "care/config.hpp"
#include "care/detectors.hpp"

namespace care {

/// FIFO message store with an id index and a cluster index.
class NodeBuffer {
 public:
  explicit NodeBuffer(Bytes capacity = 0) : capacity_(capacity) {}

  Bytes capacity() const { return capacity_; }
  Bytes occupied() const { return occupied_; }
  Bytes free_bytes() const { return capacity_ - occupied_; }
  std::size_t size() const { return queue_.size(); }
  bool empty() const { return queue_.empty(); }
  const std::deque<MessageRecord>& queue() const { return queue_; }

  bool contains(MsgId id) const { return ids_.contains(id); }
  /// Ids of buffered messages with this cluster, in admission order.
  const std::vector<MsgId>& cluster_members(ClusterId c) const;

  /// Ids this node turned away as redundant; they are not offered again.
  bool refused(MsgId id) const { return refused_.contains(id); }
  void mark_refused(MsgId id) { refused_.insert(id); }

  /// Appends without any policy. Throws when the id is present or the
  /// message does not fit.
  void push_back(const MessageRecord& m);
  MessageRecord pop_front();

 private:
  Bytes capacity_;
  Bytes occupied_ = 0;
  std::deque<MessageRecord> queue_;
  std::unordered_set<MsgId> ids_;
  std::unordered_map<ClusterId, std::vector<MsgId>> clusters_;
  std::unordered_set<MsgId> refused_;
};

enum class AdmitStatus {
  kAccepted,           // possibly after drops, see AdmitResult::dropped
  kRejectedDuplicate,  // id already buffered
  kRejectedRedundant,  // detector: similar, and truly so
  kRejectedFp,         // detector: similar, but a false positive
  kRejectedTooLarge,   // larger than the whole buffer; counts as a drop
};

std::string_view to_string(AdmitStatus s);

struct AdmitResult {
  AdmitStatus status = AdmitStatus::kAccepted;
  std::vector<MessageRecord> dropped;  // evicted from the head, oldest first
};

/// Id-based dedup, then drop-head until the message fits.
AdmitResult admit_epidemic(NodeBuffer& buffer, const MessageRecord& msg);

enum class Redundancy { kNone, kRedundant, kFalsePositive };

/// Decides whether a candidate is similar to the content of a buffer.
class AdmissionDetector {
 public:
  virtual ~AdmissionDetector() = default;
  virtual Redundancy check(const NodeBuffer& buffer, const MessageRecord& candidate) const = 0;
};

/// Never finds anything similar; CARE with it behaves exactly like epidemic.
class NeverSimilarDetector final : public AdmissionDetector {
 public:
  Redundancy check(const NodeBuffer&, const MessageRecord&) const override {
    return Redundancy::kNone;
  }
};

/// Ground-truth clusters with the oracle's FP/FN mistakes.
class OracleAdmissionDetector final : public AdmissionDetector {
 public:
  explicit OracleAdmissionDetector(AdmissionOracle oracle) : oracle_(oracle) {}
  Redundancy check(const NodeBuffer& buffer, const MessageRecord& candidate) const override;

 private:
  AdmissionOracle oracle_;
};

/// Compares the candidate to every buffered message with oracle_decide and
/// rejects on any Similar verdict. With fp > 0 the chance of a false alarm
/// grows with the buffer size; kept for comparison with the per-message
/// oracle.
class PairwiseOracleDetector final : public AdmissionDetector {
 public:
  PairwiseOracleDetector(double fp, double fn, std::uint64_t seed) : fp_(fp), fn_(fn), seed_(seed) {}
  Redundancy check(const NodeBuffer& buffer, const MessageRecord& candidate) const override;

 private:
  double fp_;
  double fn_;
  std::uint64_t seed_;
};

struct CareStats {
  std::size_t rejected_redundant = 0;
  std::size_t rejected_fp = 0;
};

/// Id-based dedup, then the detector, then admit_epidemic. A rejected
/// candidate is remembered in the buffer's refused set.
AdmitResult admit_care(NodeBuffer& buffer, const MessageRecord& msg,
                       const AdmissionDetector& detector, CareStats* stats = nullptr);

/// Ids in `from`'s queue order that `to` neither holds nor refused.
std::vector<MsgId> summary_exchange(const NodeBuffer& from, const NodeBuffer& to);

/// First message of summary_exchange, or nullptr.
const MessageRecord* next_to_send(const NodeBuffer& from, const NodeBuffer& to);

struct TransferSession {
  NodeId sender = 0;
  NodeId receiver = 0;
  MessageRecord msg;
  double bytes_sent = 0.0;
  double rate = 0.0;  // bits/s
};

enum class TransferStatus { kInProgress, kDelivered, kAborted };

/// Moves rate*dt/8 bytes. A contact that is no longer alive aborts the
/// session and nothing reaches the receiver.
TransferStatus transfer_tick(TransferSession& s, double dt, bool contact_alive);

}  // namespace care
