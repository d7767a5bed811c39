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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "adasr/error.hpp"
#include "adasr/netpbm.hpp"

namespace adasr {
namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::vector<std::uint8_t> pixels) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

TEST(NetpbmTest, DecodePpm) {
  const Tensor t = decode_ppm(bytes_of("P6\n2 1\n255\n", {255, 0, 51, 0, 255, 102}));
  ASSERT_EQ(t.shape(), (Shape{1, 3, 1, 2}));
  EXPECT_FLOAT_EQ(t.at(0, 0, 0, 0), 1.0f);
  EXPECT_FLOAT_EQ(t.at(0, 1, 0, 0), 0.0f);
  EXPECT_FLOAT_EQ(t.at(0, 2, 0, 0), 0.2f);
  EXPECT_FLOAT_EQ(t.at(0, 1, 0, 1), 1.0f);
  EXPECT_FLOAT_EQ(t.at(0, 2, 0, 1), 0.4f);
}

TEST(NetpbmTest, HeaderComments) {
  const Tensor t = decode_ppm(bytes_of("P6 # comment\n# another\n1 1 255\n", {1, 2, 3}));
  EXPECT_EQ(t.shape(), (Shape{1, 3, 1, 1}));
}

TEST(NetpbmTest, PpmRoundTripIsByteExact) {
  std::vector<std::uint8_t> pix(3 * 4 * 5);
  for (std::size_t i = 0; i < pix.size(); ++i) pix[i] = static_cast<std::uint8_t>(i * 37 % 256);
  const auto file = bytes_of("P6\n5 4\n255\n", pix);
  EXPECT_EQ(encode_ppm(decode_ppm(file)), file);
}

TEST(NetpbmTest, QuantizeClipsAndRounds) {
  EXPECT_EQ(quantize_unit(-0.3f), 0);
  EXPECT_EQ(quantize_unit(1.7f), 255);
  EXPECT_EQ(quantize_unit(0.5f), 128);
  EXPECT_EQ(quantize_unit(std::nanf("")), 0);
  EXPECT_EQ(quantize_unit(100.0f / 255.0f), 100);
}

TEST(NetpbmTest, RejectsBadInput) {
  EXPECT_THROW(decode_ppm(bytes_of("P5\n1 1\n255\n", {0})), FormatError);
  EXPECT_THROW(decode_ppm(bytes_of("P6\n1 1\n65535\n", {0, 0, 0, 0, 0, 0})), FormatError);
  EXPECT_THROW(decode_ppm(bytes_of("P6\n2 2\n255\n", {0, 0, 0})), FormatError);
  EXPECT_THROW(decode_ppm(bytes_of("P6\n0 2\n255\n", {})), FormatError);
  EXPECT_THROW(decode_ppm(bytes_of("P6\nx 2\n255\n", {})), FormatError);
  EXPECT_THROW(encode_ppm(Tensor(Shape{1, 1, 2, 2})), ShapeError);
}

TEST(NetpbmTest, DepthMapQuantization) {
  Plane p(1, 3);
  p.values = {0.0f, 16.0f, 32.0f};
  const auto file = encode_pgm_map(p, 32.0);
  const std::string header = "P5\n3 1\n255\n";
  ASSERT_EQ(file.size(), header.size() + 3);
  EXPECT_EQ(file[header.size()], 0);
  EXPECT_EQ(file[header.size() + 1], 128);
  EXPECT_EQ(file[header.size() + 2], 255);
  const Plane back = decode_pgm_map(file, 32.0);
  EXPECT_FLOAT_EQ(back.values[2], 32.0f);
  EXPECT_NEAR(back.values[1], 16.0, 32.0 / 255.0);
  EXPECT_THROW(encode_pgm_map(p, 0.0), RangeError);
}

TEST(NetpbmTest, MeanOverGroups) {
  DepthMap d(2, 1, 2, 0.0f);
  d.at(0, 0, 0) = 2.0f;
  d.at(1, 0, 0) = 4.0f;
  d.at(1, 0, 1) = 1.0f;
  const Plane m = mean_over_groups(d);
  EXPECT_FLOAT_EQ(m.values[0], 3.0f);
  EXPECT_FLOAT_EQ(m.values[1], 0.5f);
}

TEST(NetpbmTest, FileIo) {
  const auto path = std::filesystem::temp_directory_path() / "adasr_netpbm_test.ppm";
  Tensor img(Shape{1, 3, 2, 2}, 0.2f);
  write_image(img, path);
  const Tensor back = read_image(path);
  for (float v : back.data()) EXPECT_FLOAT_EQ(v, 51.0f / 255.0f);
  std::filesystem::remove(path);
  EXPECT_THROW(read_image(path), IoError);
}

}  // namespace
}  // namespace adasr
