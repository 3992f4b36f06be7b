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

#include "care/phash.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "care/error.hpp"

namespace care {

std::string PHash64::hex() const { return fmt::format("{:016x}", bits); }

PHash64 PHash64::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (hex.empty() || hex.size() > 16 || ec != std::errc() || ptr != hex.data() + hex.size()) {
    throw InvalidInput(fmt::format("'{}' is not a 64-bit hex hash", hex));
  }
  return PHash64{v};
}

namespace {

// weights[o * n_in + i]: share of output cell o covered by input cell i,
// normalised so each row sums to one.
std::vector<double> box_weights(std::size_t n_in, std::size_t n_out) {
  std::vector<double> w(n_out * n_in, 0.0);
  const double scale = static_cast<double>(n_in) / static_cast<double>(n_out);
  for (std::size_t o = 0; o < n_out; ++o) {
    const double lo = static_cast<double>(o) * scale;
    const double hi = static_cast<double>(o + 1) * scale;
    const auto first = static_cast<std::size_t>(std::floor(lo));
    const auto last = std::min(n_in, static_cast<std::size_t>(std::ceil(hi)));
    for (std::size_t i = first; i < last; ++i) {
      const double overlap =
          std::min(hi, static_cast<double>(i + 1)) - std::max(lo, static_cast<double>(i));
      if (overlap > 0) w[o * n_in + i] = overlap / scale;
    }
  }
  return w;
}

}  // namespace

GrayImage resample_box(const GrayImage& image, std::size_t out_w, std::size_t out_h) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  const auto wx = box_weights(w, out_w);
  const auto wy = box_weights(h, out_h);

  // Horizontal pass: h x out_w.
  std::vector<double> tmp(h * out_w, 0.0);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t o = 0; o < out_w; ++o) {
      double acc = 0.0;
      for (std::size_t x = 0; x < w; ++x) acc += wx[o * w + x] * image.at(x, y);
      tmp[y * out_w + o] = acc;
    }
  }
  GrayImage out(out_w, out_h);
  for (std::size_t o = 0; o < out_h; ++o) {
    for (std::size_t x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (std::size_t y = 0; y < h; ++y) acc += wy[o * h + y] * tmp[y * out_w + x];
      out.at(x, o) = acc;
    }
  }
  return out;
}

std::array<double, kPHashBlock * kPHashBlock> dct_low_block(const GrayImage& img) {
  constexpr std::size_t n = kPHashResample;
  constexpr std::size_t k = kPHashBlock;
  if (img.width() != n || img.height() != n) {
    throw InvalidInput("dct_low_block expects a 32x32 image");
  }
  // cos_table[u * n + x] = cos(pi * (2x + 1) * u / 2n)
  std::array<double, k * n> cos_table{};
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t x = 0; x < n; ++x) {
      cos_table[u * n + x] = std::cos(std::numbers::pi * static_cast<double>((2 * x + 1) * u) /
                                      static_cast<double>(2 * n));
    }
  }
  // rows[y * k + v] = sum_x img(x, y) * cos(v, x)
  std::array<double, n * k> rows{};
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t v = 0; v < k; ++v) {
      double acc = 0.0;
      for (std::size_t x = 0; x < n; ++x) acc += img.at(x, y) * cos_table[v * n + x];
      rows[y * k + v] = acc;
    }
  }
  std::array<double, k * k> out{};
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = 0; v < k; ++v) {
      double acc = 0.0;
      for (std::size_t y = 0; y < n; ++y) acc += cos_table[u * n + y] * rows[y * k + v];
      out[u * k + v] = acc;
    }
  }
  return out;
}

PHash64 phash_compute(const GrayImage& image) {
  if (image.width() < kPHashMinSide || image.height() < kPHashMinSide) {
    throw InvalidInput(fmt::format("phash needs at least 8x8 pixels, got {}x{}", image.width(),
                                   image.height()));
  }
  for (double v : image.pixels()) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidInput("phash: intensities must be finite and >= 0");
  }
  const GrayImage small = resample_box(image, kPHashResample, kPHashResample);
  auto coeffs = dct_low_block(small);

  // Rounding leaves ~1e-13 relative residue in coefficients that are exactly
  // zero in real arithmetic (e.g. every AC term of a flat image). Snap those
  // to zero so they compare equal to a zero median.
  double mass = 0.0;
  for (double v : small.pixels()) mass += std::abs(v);
  const double floor = 1e-10 * mass;
  for (double& c : coeffs) {
    if (std::abs(c) <= floor) c = 0.0;
  }

  std::vector<double> ac(coeffs.begin() + 1, coeffs.end());
  std::sort(ac.begin(), ac.end());
  const std::size_t m = ac.size();
  const double median = m % 2 ? ac[m / 2] : 0.5 * (ac[m / 2 - 1] + ac[m / 2]);

  PHash64 h;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    if (coeffs[i] > median) h.bits |= std::uint64_t{1} << i;
  }
  return h;
}

}  // namespace care
