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

#include "vrnote/image.hpp"

#include <fstream>
#include <sstream>

#include "vrnote/error.hpp"

namespace vrnote {

std::string encode_pgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  out.append(image.pixels().begin(), image.pixels().end());
  return out;
}

GrayImage decode_pgm(const std::string& bytes) {
  std::istringstream in(bytes);
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (!in || magic != "P5" || width <= 0 || height <= 0 || maxval != 255) {
    throw Error(ErrorCode::kInvalidArgument, "not a binary 8-bit PGM");
  }
  in.get();  // single whitespace after maxval
  GrayImage image(width, height);
  in.read(reinterpret_cast<char*>(image.pixels().data()),
          static_cast<std::streamsize>(image.pixels().size()));
  if (in.gcount() != static_cast<std::streamsize>(image.pixels().size())) {
    throw Error(ErrorCode::kInvalidArgument, "truncated PGM payload");
  }
  return image;
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot open " + path.string() + " for writing");
  }
  const std::string bytes = encode_pgm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace vrnote
