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

// Byte-level baseline: fixed-offset chunk deduplication.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace care {

using Blob = std::vector<std::uint8_t>;

inline constexpr std::size_t kMinChunkSize = 16;

struct ChunkDedupStats {
  std::uint64_t total_bytes = 0;
  std::uint64_t duplicate_bytes = 0;
  std::uint64_t chunks = 0;
  std::uint64_t duplicate_chunks = 0;

  double ratio() const {
    return total_bytes == 0 ? 0.0
                            : static_cast<double>(duplicate_bytes) / static_cast<double>(total_bytes);
  }
};

/// Splits every blob at fixed offsets (the last partial chunk is kept) and
/// counts a chunk as duplicate when its SHA-256 digest appeared earlier in
/// stream order. Throws InvalidInput when chunk_size < 16.
ChunkDedupStats chunk_dedup_stats(std::span<const Blob> blobs, std::size_t chunk_size);

/// duplicate_bytes / total_bytes; 0 for empty input.
double chunk_dedup_ratio(std::span<const Blob> blobs, std::size_t chunk_size);

}  // namespace care
