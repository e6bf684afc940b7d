// Copyright 2026 The vrnote Authors.
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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace vrnote {

/// 8-bit grayscale image, row-major.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0)
      : width_(width), height_(height),
        pixels_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }

  std::uint8_t at(int u, int v) const {
    return pixels_[static_cast<std::size_t>(v) * width_ + u];
  }
  std::uint8_t& at(int u, int v) {
    return pixels_[static_cast<std::size_t>(v) * width_ + u];
  }

  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  std::vector<std::uint8_t>& pixels() { return pixels_; }

  bool operator==(const GrayImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Binary portable graymap ("P5", maxval 255). The header is
/// "P5\n<width> <height>\n255\n" followed by raw rows.
std::string encode_pgm(const GrayImage& image);
GrayImage decode_pgm(const std::string& bytes);
void write_pgm(const GrayImage& image, const std::filesystem::path& path);

}  // namespace vrnote
