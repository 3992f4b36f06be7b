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

#include "care/chunk.hpp"

#include <array>
#include <cstring>
#include <unordered_set>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "care/error.hpp"

namespace care {
namespace {

using Digest = std::array<unsigned char, 32>;

struct DigestHash {
  std::size_t operator()(const Digest& d) const noexcept {
    std::size_t h;
    std::memcpy(&h, d.data(), sizeof(h));
    return h;
  }
};

Digest sha256(const std::uint8_t* data, std::size_t n) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data, n, out.data(), &len, EVP_sha256(), nullptr) != 1 || len != out.size()) {
    throw Error("SHA-256 digest failed");
  }
  return out;
}

}  // namespace

ChunkDedupStats chunk_dedup_stats(std::span<const Blob> blobs, std::size_t chunk_size) {
  if (chunk_size < kMinChunkSize) {
    throw InvalidInput(fmt::format("chunk size {} is below the minimum of {}", chunk_size, kMinChunkSize));
  }
  ChunkDedupStats stats;
  std::unordered_set<Digest, DigestHash> seen;
  for (const Blob& blob : blobs) {
    for (std::size_t off = 0; off < blob.size(); off += chunk_size) {
      const std::size_t n = std::min(chunk_size, blob.size() - off);
      stats.total_bytes += n;
      ++stats.chunks;
      if (!seen.insert(sha256(blob.data() + off, n)).second) {
        stats.duplicate_bytes += n;
        ++stats.duplicate_chunks;
      }
    }
  }
  return stats;
}

double chunk_dedup_ratio(std::span<const Blob> blobs, std::size_t chunk_size) {
  return chunk_dedup_stats(blobs, chunk_size).ratio();
}

}  // namespace care
