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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

namespace care {

/// Row-major grayscale intensity matrix.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), pixels_(width * height, fill) {}
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  double at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  double& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  const std::vector<double>& pixels() const { return pixels_; }
  std::vector<double>& pixels() { return pixels_; }

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

/// Binary PGM (P5) with maxval <= 255. Comments in the header are skipped.
GrayImage read_pgm(const std::filesystem::path& path);
GrayImage parse_pgm(std::string_view data);

/// Writes P5, maxval 255; intensities are rounded and clamped to 0..255.
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace care
