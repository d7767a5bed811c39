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

#include <cstring>
#include <filesystem>
#include <random>

#include "adasr/error.hpp"
#include "adasr/weights.hpp"

namespace adasr {
namespace {

std::vector<std::uint8_t> u32le(std::uint32_t v) {
  return {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v >> 16),
          static_cast<std::uint8_t>(v >> 24)};
}

void append(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

// Hand-assembled file with one tensor "w" of dims {2} = {1.0, -2.5}.
std::vector<std::uint8_t> tiny_file() {
  std::vector<std::uint8_t> b = {'A', 'D', 'S', 'R'};
  append(b, u32le(1));
  append(b, u32le(1));
  append(b, u32le(1));
  b.push_back('w');
  b.push_back(0);
  b.push_back(1);
  append(b, u32le(2));
  for (float f : {1.0f, -2.5f}) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    append(b, u32le(bits));
  }
  return b;
}

std::uint64_t offset_of(const std::vector<std::uint8_t>& bytes) {
  try {
    parse_weights(bytes);
  } catch (const FormatError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "expected FormatError";
  return 0;
}

TEST(WeightsTest, ByteLayout) {
  WeightStore s;
  s.insert("w", {2}, {1.0f, -2.5f});
  EXPECT_EQ(serialize_weights(s), tiny_file());
  const WeightStore back = parse_weights(tiny_file());
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back.at("w").values, (std::vector<float>{1.0f, -2.5f}));
}

TEST(WeightsTest, RoundTripPreservesOrderAndBits) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<float> dist(-3, 3);
  WeightStore s;
  const char* names[] = {"zeta", "alpha", "body.g0.b0.conv1.weight", "m"};
  const std::vector<std::vector<std::uint32_t>> dims = {{3}, {2, 5}, {4, 4, 3, 3}, {1, 2, 3}};
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t n = 1;
    for (auto d : dims[i]) n *= d;
    std::vector<float> v(n);
    for (float& x : v) x = dist(rng);
    s.insert(names[i], dims[i], v);
  }
  const WeightStore back = parse_weights(serialize_weights(s));
  ASSERT_EQ(back.size(), s.size());
  auto a = s.begin();
  for (auto b = back.begin(); b != back.end(); ++a, ++b) {
    EXPECT_EQ(a->name, b->name);
    EXPECT_EQ(a->dims, b->dims);
    ASSERT_EQ(a->values.size(), b->values.size());
    EXPECT_EQ(std::memcmp(a->values.data(), b->values.data(), a->values.size() * 4), 0);
  }
  EXPECT_EQ(serialize_weights(back), serialize_weights(s));
}

TEST(WeightsTest, ToTensorPadsLeft) {
  WeightStore s;
  s.insert("b", {3}, {1, 2, 3});
  EXPECT_EQ(s.at("b").to_tensor().shape(), (Shape{1, 1, 1, 3}));
  s.insert("k", {2, 3, 3, 3}, std::vector<float>(54));
  EXPECT_EQ(s.at("k").to_tensor().shape(), (Shape{2, 3, 3, 3}));
}

TEST(WeightsTest, InsertValidates) {
  WeightStore s;
  EXPECT_THROW(s.insert("x", {2, 2}, {1, 2, 3}), ShapeError);
  s.insert("x", {1}, {1});
  EXPECT_THROW(s.insert("x", {1}, {1}), ParameterError);
  EXPECT_THROW(s.at("missing"), ParameterError);
  EXPECT_EQ(s.find("missing"), nullptr);
}

TEST(WeightsTest, MalformedFilesReportOffsets) {
  auto bad_magic = tiny_file();
  bad_magic[0] = 'X';
  EXPECT_EQ(offset_of(bad_magic), 0u);

  auto bad_version = tiny_file();
  bad_version[4] = 2;
  EXPECT_EQ(offset_of(bad_version), 4u);

  auto bad_dtype = tiny_file();
  bad_dtype[17] = 1;
  EXPECT_EQ(offset_of(bad_dtype), 17u);

  auto zero_rank = tiny_file();
  zero_rank[18] = 0;
  EXPECT_THROW(parse_weights(zero_rank), FormatError);

  auto zero_dim = tiny_file();
  zero_dim[19] = 0;
  EXPECT_EQ(offset_of(zero_dim), 19u);

  auto truncated = tiny_file();
  truncated.pop_back();
  EXPECT_THROW(parse_weights(truncated), FormatError);
  EXPECT_THROW(parse_weights(std::vector<std::uint8_t>{'A', 'D'}), FormatError);

  auto trailing = tiny_file();
  trailing.push_back(0);
  EXPECT_EQ(offset_of(trailing), tiny_file().size());

  auto dup = tiny_file();
  dup[8] = 2;
  const auto body = std::vector<std::uint8_t>(dup.begin() + 12, dup.end());
  append(dup, body);
  EXPECT_EQ(offset_of(dup), tiny_file().size());
}

TEST(WeightsTest, FileRoundTripAndMissingFile) {
  const auto path = std::filesystem::temp_directory_path() / "adasr_weights_test.bin";
  WeightStore s;
  s.insert("a", {2}, {0.5f, 0.25f});
  save_weights(s, path);
  EXPECT_EQ(load_weights(path).at("a").values, s.at("a").values);
  std::filesystem::remove(path);
  EXPECT_THROW(load_weights(path), IoError);
}

}  // namespace
}  // namespace adasr
