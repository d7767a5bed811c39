// Copyright 2026 The AdaSR Authors. All Rights Reserved.
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

#include "adasr/netpbm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "adasr/error.hpp"
#include "adasr/weights.hpp"

namespace adasr {

namespace {

struct Header {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t data_offset = 0;
};

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (v > (1u << 24)) throw FormatError(std::string("netpbm ") + what + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw FormatError(std::string("netpbm header: expected ") + what, start);
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  bool at_space() const { return pos_ < bytes_.size() && std::isspace(bytes_[pos_]); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

Header parse_header(std::span<const std::uint8_t> bytes, char kind, std::size_t channels) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != static_cast<std::uint8_t>(kind)) {
    throw FormatError(std::string("expected netpbm magic P") + kind, 0);
  }
  HeaderReader in(bytes.subspan(0));
  in.advance();
  in.advance();
  Header h;
  h.width = in.number("width");
  h.height = in.number("height");
  const std::size_t maxval_at = in.pos();
  const std::size_t maxval = in.number("maxval");
  if (maxval != 255) throw FormatError("netpbm maxval " + std::to_string(maxval) + " unsupported (need 255)", maxval_at);
  if (h.width == 0 || h.height == 0) throw FormatError("netpbm image has zero size", maxval_at);
  if (!in.at_space()) throw FormatError("netpbm header: expected whitespace after maxval", in.pos());
  in.advance();
  h.data_offset = in.pos();
  const std::size_t need = h.width * h.height * channels;
  if (bytes.size() - h.data_offset < need) {
    throw FormatError("netpbm pixel data truncated: need " + std::to_string(need) + " bytes", bytes.size());
  }
  return h;
}

std::vector<std::uint8_t> header_bytes(char kind, std::size_t w, std::size_t h) {
  const std::string s = std::string("P") + kind + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

std::uint8_t quantize_unit(float v) {
  const float clipped = std::clamp(std::isnan(v) ? 0.0f : v, 0.0f, 1.0f);
  return static_cast<std::uint8_t>(std::round(clipped * 255.0f));
}

Tensor decode_ppm(std::span<const std::uint8_t> bytes) {
  const Header hd = parse_header(bytes, '6', 3);
  Tensor img(Shape{1, 3, hd.height, hd.width});
  const std::uint8_t* px = bytes.data() + hd.data_offset;
  for (std::size_t y = 0; y < hd.height; ++y) {
    for (std::size_t x = 0; x < hd.width; ++x) {
      for (std::size_t c = 0; c < 3; ++c) img.at(0, c, y, x) = static_cast<float>(*px++) / 255.0f;
    }
  }
  return img;
}

std::vector<std::uint8_t> encode_ppm(const Tensor& image) {
  if (image.n() != 1 || image.c() != 3) throw ShapeError("encode_ppm expects (1,3,h,w), got " + image.shape().str());
  std::vector<std::uint8_t> out = header_bytes('6', image.w(), image.h());
  out.reserve(out.size() + image.size());
  for (std::size_t y = 0; y < image.h(); ++y) {
    for (std::size_t x = 0; x < image.w(); ++x) {
      for (std::size_t c = 0; c < 3; ++c) out.push_back(quantize_unit(image.at(0, c, y, x)));
    }
  }
  return out;
}

Tensor read_image(const std::filesystem::path& path) { return decode_ppm(read_file_bytes(path)); }

void write_image(const Tensor& image, const std::filesystem::path& path) {
  write_file_bytes(path, encode_ppm(image));
}

Plane decode_pgm_map(std::span<const std::uint8_t> bytes, double max_depth) {
  const Header hd = parse_header(bytes, '5', 1);
  Plane out(hd.height, hd.width);
  for (std::size_t p = 0; p < out.size(); ++p) {
    out.values[p] = static_cast<float>(bytes[hd.data_offset + p] / 255.0 * max_depth);
  }
  return out;
}

std::vector<std::uint8_t> encode_pgm_map(const Plane& depth, double max_depth) {
  if (!(max_depth > 0.0)) throw RangeError("depth map encoding needs a positive maximum depth");
  std::vector<std::uint8_t> out = header_bytes('5', depth.w, depth.h);
  for (float v : depth.values) out.push_back(quantize_unit(static_cast<float>(v / max_depth)));
  return out;
}

Plane read_map(const std::filesystem::path& path, double max_depth) {
  return decode_pgm_map(read_file_bytes(path), max_depth);
}

void write_map(const Plane& depth, double max_depth, const std::filesystem::path& path) {
  write_file_bytes(path, encode_pgm_map(depth, max_depth));
}

Plane mean_over_groups(const DepthMap& depth) {
  Plane out(depth.h(), depth.w());
  for (std::size_t y = 0; y < depth.h(); ++y) {
    for (std::size_t x = 0; x < depth.w(); ++x) {
      double sum = 0.0;
      for (std::size_t g = 0; g < depth.groups(); ++g) sum += depth.at(g, y, x);
      out(y, x) = static_cast<float>(sum / static_cast<double>(depth.groups()));
    }
  }
  return out;
}

}  // namespace adasr
