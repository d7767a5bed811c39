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

#include "adasr/config.hpp"
#include "adasr/error.hpp"

namespace adasr {
namespace {

TEST(ConfigTest, Presets) {
  const ModelConfig e = ModelConfig::edsr(4);
  EXPECT_EQ(e.feat_channels, 256u);
  EXPECT_EQ(e.blocks, 32u);
  EXPECT_EQ(e.groups, 1u);
  EXPECT_FLOAT_EQ(e.res_scale, 0.1f);
  EXPECT_EQ(e.upsample_factors(), (std::vector<int>{2, 2}));
  const ModelConfig r = ModelConfig::rcan(3);
  EXPECT_EQ(r.groups, 10u);
  EXPECT_EQ(r.blocks, 20u);
  EXPECT_TRUE(r.channel_attention);
  EXPECT_EQ(r.ca_reduction, 16u);
  EXPECT_EQ(r.upsample_factors(), (std::vector<int>{3}));
}

TEST(ConfigTest, PresetThenOverrides) {
  const ModelConfig c = parse_config("# toy\nblocks = 4\npreset=rcan\n\nfeat_channels=16  # small\nca_reduction=4\n");
  EXPECT_EQ(c.groups, 10u);
  EXPECT_EQ(c.blocks, 4u);
  EXPECT_EQ(c.feat_channels, 16u);
  EXPECT_EQ(c.ca_reduction, 4u);
  EXPECT_TRUE(c.channel_attention);
}

TEST(ConfigTest, FormatRoundTrip) {
  ModelConfig c = ModelConfig::rcan(4);
  c.rgb_mean = {0.5f, 0.25f, 0.125f};
  c.res_scale = 0.5f;
  EXPECT_EQ(parse_config(format_config(c)), c);
  EXPECT_EQ(parse_config(format_config(ModelConfig::edsr(3))), ModelConfig::edsr(3));
}

TEST(ConfigTest, Errors) {
  EXPECT_THROW(parse_config("scale=5\n"), ConfigError);
  EXPECT_THROW(parse_config("bogus=1\n"), ConfigError);
  EXPECT_THROW(parse_config("blocks=1\nblocks=2\n"), ConfigError);
  EXPECT_THROW(parse_config("blocks\n"), ConfigError);
  EXPECT_THROW(parse_config("blocks=two\n"), ConfigError);
  EXPECT_THROW(parse_config("preset=vdsr\n"), ConfigError);
  EXPECT_THROW(parse_config("channel_attention=maybe\n"), ConfigError);
  EXPECT_THROW(parse_config("channel_attention=1\nfeat_channels=10\nca_reduction=4\n"), ConfigError);
  EXPECT_THROW(parse_config("rgb_mean=0.1,0.2\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/adasr.cfg"), IoError);
  try {
    parse_config("scale=2\n\nwhat=1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

}  // namespace
}  // namespace adasr
