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

// 64-bit DCT perceptual hash.
//
// Recipe: box-filter the image to 32x32, take the type-II DCT, keep the 8x8
// lowest-frequency block, drop the DC term, and set bit k (k = 8*u + v) when
// AC coefficient (u, v) is strictly greater than the median of the 63 AC
// coefficients. Bit 0 (the DC slot) is always clear. Dropping DC makes the
// hash invariant to brightness offsets; the median test makes it invariant
// to positive gain.

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "care/image.hpp"

namespace care {

inline constexpr int kHashBits = 64;
inline constexpr std::size_t kPHashResample = 32;
inline constexpr std::size_t kPHashBlock = 8;
inline constexpr std::size_t kPHashMinSide = 8;

struct PHash64 {
  std::uint64_t bits = 0;

  bool bit(int k) const { return (bits >> k) & 1U; }
  std::string hex() const;
  static PHash64 from_hex(std::string_view hex);
  friend bool operator==(PHash64, PHash64) = default;
};

/// Area-weighted box resampling to out_w x out_h. Linear in the intensities.
GrayImage resample_box(const GrayImage& image, std::size_t out_w, std::size_t out_h);

/// Unnormalised 2-D type-II DCT coefficients (u, v) for u, v < 8 of a
/// 32x32 image, stored row-major with index 8*u + v.
std::array<double, kPHashBlock * kPHashBlock> dct_low_block(const GrayImage& image32);

/// Throws InvalidInput for images smaller than 8x8 or with non-finite or
/// negative intensities.
PHash64 phash_compute(const GrayImage& image);

inline int hamming_distance(PHash64 a, PHash64 b) { return std::popcount(a.bits ^ b.bits); }

/// S_ph = 64 - HammingDist(a, b), in [0, 64].
inline int phash_similarity(PHash64 a, PHash64 b) { return kHashBits - hamming_distance(a, b); }

}  // namespace care
