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

#include <random>

#include "adasr/error.hpp"
#include "adasr/model.hpp"
#include "reference.hpp"

namespace adasr {
namespace {

using testing::max_abs_diff;
using testing::random_tensor;

// Forces the adapter to saturate at the block count.
WeightStore saturating(WeightStore store) {
  for (float& v : store.at("adapter.conv5.bias").values) v = 1.0e3f;
  return store;
}

TEST(ModelTest, OutputShapeForScaleThree) {
  ModelConfig cfg = testing::toy_edsr(2);
  cfg.scale = 3;
  cfg.feat_channels = 4;
  const Model model(cfg, random_weights(cfg, 1));
  std::mt19937 rng(1);
  const ForwardResult r = model.forward(random_tensor(Shape{1, 3, 24, 31}, rng, 0, 1), 1.0);
  EXPECT_EQ(r.image.shape(), (Shape{1, 3, 72, 93}));
  EXPECT_EQ(r.depth.h(), 24u);
  EXPECT_EQ(r.depth.w(), 31u);
}

TEST(ModelTest, ScaleFourUsesTwoShuffleStages) {
  ModelConfig cfg = testing::toy_edsr(1);
  cfg.scale = 4;
  cfg.feat_channels = 4;
  const Model model(cfg, random_weights(cfg, 2));
  EXPECT_EQ(model.upsampler().size(), 2u);
  std::mt19937 rng(2);
  EXPECT_EQ(model.forward(random_tensor(Shape{1, 3, 5, 6}, rng, 0, 1), 1.0).image.shape(), (Shape{1, 3, 20, 24}));
}

TEST(ModelTest, FullDepthEqualsUngatedBackbone) {
  for (const ModelConfig& cfg : {testing::toy_edsr(3), testing::toy_rcan(2, 2)}) {
    const Model model(cfg, saturating(testing::random_store_with_bias(cfg, 3)));
    std::mt19937 rng(3);
    const Tensor x = random_tensor(Shape{1, 3, 12, 12}, rng, 0, 1);
    const Tensor expected = testing::ref_backbone(model, x);
    for (ExecMode mode : {ExecMode::kDense, ExecMode::kSparseExact, ExecMode::kSparseFast}) {
      const ForwardResult r = model.forward(x, static_cast<double>(cfg.blocks), {mode});
      EXPECT_DOUBLE_EQ(r.report.average_depth, static_cast<double>(cfg.blocks));
      EXPECT_LE(max_abs_diff(r.image, expected), 1e-4) << to_string(mode);
    }
  }
}

TEST(ModelTest, SparseExactAgreesWithDenseAtHalfDepth) {
  const ModelConfig cfg = testing::toy_edsr(4);
  const Model model(cfg, testing::random_store_with_bias(cfg, 4));
  std::mt19937 rng(4);
  const Tensor x = random_tensor(Shape{1, 3, 10, 10}, rng, 0, 1);
  DepthMap depth(1, 10, 10);
  std::uniform_real_distribution<float> d(0.0f, 4.0f);
  for (std::size_t y = 0; y < 10; ++y) {
    for (std::size_t x2 = 0; x2 < 10; ++x2) depth.at(0, y, x2) = d(rng);
  }
  const ForwardResult dense = model.forward(x, 2.0, {ExecMode::kDense, CaPool::kFull, depth});
  const ForwardResult exact = model.forward(x, 2.0, {ExecMode::kSparseExact, CaPool::kFull, depth});
  EXPECT_LE(max_abs_diff(dense.image, exact.image), 1e-4);
  EXPECT_LE(max_abs_diff(dense.image, testing::ref_backbone(model, x, &depth)), 1e-4);
  // Adapter path at the same desired depth.
  const ForwardResult a = model.forward(x, 2.0, {ExecMode::kDense});
  const ForwardResult b = model.forward(x, 2.0, {ExecMode::kSparseExact});
  EXPECT_LE(max_abs_diff(a.image, b.image), 1e-4);
}

TEST(ModelTest, ModeLadderOnMacs) {
  for (const ModelConfig& cfg : {testing::toy_edsr(4), testing::toy_rcan(2, 3)}) {
    const Model model(cfg, testing::random_store_with_bias(cfg, 5));
    std::mt19937 rng(5);
    const Tensor x = random_tensor(Shape{1, 3, 9, 11}, rng, 0, 1);
    std::uniform_real_distribution<float> d(0.0f, static_cast<float>(cfg.blocks));
    for (int trial = 0; trial < 3; ++trial) {
      DepthMap depth(cfg.groups, 9, 11);
      for (std::size_t g = 0; g < cfg.groups; ++g) {
        for (std::size_t y = 0; y < 9; ++y) {
          for (std::size_t x2 = 0; x2 < 11; ++x2) depth.at(g, y, x2) = d(rng);
        }
      }
      const auto fast = model.forward(x, 1.0, {ExecMode::kSparseFast, CaPool::kFull, depth}).report;
      const auto exact = model.forward(x, 1.0, {ExecMode::kSparseExact, CaPool::kFull, depth}).report;
      const auto dense = model.forward(x, 1.0, {ExecMode::kDense, CaPool::kFull, depth}).report;
      EXPECT_LE(fast.retained_macs(), exact.retained_macs());
      EXPECT_LE(exact.retained_macs(), dense.retained_macs());
      EXPECT_EQ(dense.retained_macs(), dense.dense_macs());
    }
    const DepthMap full(cfg.groups, 9, 11, static_cast<float>(cfg.blocks));
    const auto fast = model.forward(x, 1.0, {ExecMode::kSparseFast, CaPool::kFull, full}).report;
    const auto dense = model.forward(x, 1.0, {ExecMode::kDense, CaPool::kFull, full}).report;
    EXPECT_EQ(fast.retained_macs(), dense.retained_macs());
  }
}

TEST(ModelTest, RetainedTrunkMacsGrowWithUniformDepth) {
  const ModelConfig cfg = testing::toy_edsr(6);
  const Model model(cfg, random_weights(cfg, 6));
  std::mt19937 rng(6);
  const Tensor x = random_tensor(Shape{1, 3, 8, 8}, rng, 0, 1);
  std::uint64_t previous = 0;
  for (int k = 0; k <= 24; ++k) {
    const float d = 0.25f * static_cast<float>(k);
    const auto report = model.forward(x, d, {ExecMode::kSparseFast, CaPool::kFull, DepthMap(1, 8, 8, d)}).report;
    EXPECT_GE(report.gated_retained_macs(), previous);
    previous = report.gated_retained_macs();
  }
}

TEST(ModelTest, AdapterOverheadBelowTwoPercentForEdsrPreset) {
  const ModelConfig cfg = ModelConfig::edsr(2);
  const auto layout = parameter_layout(cfg);
  std::uint64_t adapter = 0;
  std::uint64_t trunk = 0;
  for (const ParamInfo& p : layout) {
    if (!p.name.ends_with(".weight")) continue;
    const ConvSpec s{p.dims[1], p.dims[0], p.dims[2], p.dims[3], 1, p.dims[2] / 2, true};
    if (p.name.starts_with("adapter.")) adapter += count_macs(s, 1);
    if (p.name.starts_with("body.")) trunk += count_macs(s, 1);
  }
  // Per-position costs; every layer runs at the LR resolution so the ratio is size-free.
  EXPECT_LT(static_cast<double>(adapter) / static_cast<double>(trunk), 0.02);
}

TEST(ModelTest, ReportMatchesInstrumentedCounts) {
  const ModelConfig cfg = testing::toy_rcan(2, 2);
  const Model model(cfg, random_weights(cfg, 7));
  std::mt19937 rng(7);
  const Tensor x = random_tensor(Shape{1, 3, 7, 7}, rng, 0, 1);
  const DepthMap depth(2, 7, 7, 1.0f);
  const auto r = model.forward(x, 1.0, {ExecMode::kSparseFast, CaPool::kSupport, depth}).report;
  for (const LayerCost& l : r.layers) {
    EXPECT_LE(l.retained_macs, l.dense_macs) << l.name;
  }
  // One active block of two per group, full support.
  const ConvSpec c = ConvSpec::same(16, 16);
  EXPECT_EQ(r.retained_macs("body.g0.b0.conv1"), count_macs(c, 49));
  EXPECT_EQ(r.retained_macs("body.g0.b1.conv1"), 0u);
  EXPECT_EQ(r.retained_macs("body.g1.tail"), count_macs(c, 49));
}

TEST(ModelTest, DepthOverrideValidation) {
  const ModelConfig cfg = testing::toy_edsr(2);
  const Model model(cfg, random_weights(cfg, 8));
  EXPECT_THROW(model.forward(Tensor(Shape{1, 3, 4, 4}), 1.0, {ExecMode::kDense, CaPool::kFull, DepthMap(1, 5, 4)}),
               ShapeError);
  EXPECT_THROW(model.forward(Tensor(Shape{1, 1, 4, 4}), 1.0), ShapeError);
}

TEST(WeightValidationTest, MissingExtraAndMisshaped) {
  const ModelConfig cfg = testing::toy_edsr(2);
  const WeightStore good = random_weights(cfg, 9);
  EXPECT_NO_THROW(validate_weights(cfg, good));

  WeightStore missing;
  for (const auto& t : good) {
    if (t.name != "tail.out.bias") missing.insert(t.name, t.dims, t.values);
  }
  EXPECT_THROW(validate_weights(cfg, missing), ParameterError);

  WeightStore extra = good;
  extra.insert("body.g0.b9.conv1.bias", {16}, std::vector<float>(16));
  EXPECT_THROW(validate_weights(cfg, extra), ParameterError);

  WeightStore bad;
  for (const auto& t : good) {
    if (t.name == "head.bias") {
      bad.insert(t.name, {8}, std::vector<float>(8));
    } else {
      bad.insert(t.name, t.dims, t.values);
    }
  }
  EXPECT_THROW(Model(cfg, bad), ParameterError);
}

TEST(RandomWeightsTest, DeterministicAndInRange) {
  const ModelConfig cfg = testing::toy_rcan(2, 2);
  const WeightStore a = random_weights(cfg, 42);
  const WeightStore b = random_weights(cfg, 42);
  const WeightStore c = random_weights(cfg, 43);
  ASSERT_EQ(a.size(), b.size());
  bool differs = false;
  for (const auto& t : a) {
    EXPECT_EQ(t.values, b.at(t.name).values);
    differs = differs || t.values != c.at(t.name).values;
    for (float v : t.values) {
      if (t.name.ends_with(".slopes")) {
        EXPECT_EQ(v, 0.25f);
      } else {
        EXPECT_GE(v, -0.05f);
        EXPECT_LE(v, 0.05f);
      }
    }
  }
  EXPECT_TRUE(differs);
}

}  // namespace
}  // namespace adasr
