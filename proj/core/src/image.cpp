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

#include "care/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "care/error.hpp"

namespace care {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != width * height) {
    throw InvalidInput(fmt::format("image: {} pixels for a {}x{} image", pixels_.size(), width, height));
  }
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view data) : data_(data) {}

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(data_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw InvalidInput(fmt::format("pgm: missing {}", what));
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(std::string_view data) {
  if (data.size() < 2 || data[0] != 'P' || data[1] != '5') {
    throw InvalidInput("pgm: only binary P5 images are supported");
  }
  HeaderReader r(data);
  r.advance(2);
  const std::size_t w = r.number("width");
  const std::size_t h = r.number("height");
  const std::size_t maxval = r.number("maxval");
  if (w == 0 || h == 0) throw InvalidInput("pgm: zero dimension");
  if (maxval == 0 || maxval > 255) throw InvalidInput("pgm: only 8-bit images (maxval <= 255)");
  // Exactly one whitespace byte separates the header from the raster.
  r.advance(1);
  if (data.size() < r.pos() + w * h) throw InvalidInput("pgm: truncated raster");
  std::vector<double> px(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    px[i] = static_cast<unsigned char>(data[r.pos() + i]);
  }
  return GrayImage(w, h, std::move(px));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_pgm(ss.str());
  } catch (const InvalidInput& e) {
    throw InvalidInput(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::string raster(image.pixels().size(), '\0');
  for (std::size_t i = 0; i < raster.size(); ++i) {
    double v = std::clamp(std::round(image.pixels()[i]), 0.0, 255.0);
    raster[i] = static_cast<char>(static_cast<unsigned char>(v));
  }
  out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
  if (!out) throw IoError(fmt::format("short write to '{}'", path.string()));
}

}  // namespace care
