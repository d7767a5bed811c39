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

#include <fstream>
#include <random>
#include <string>

#include "adasr/error.hpp"
#include "adasr/resize.hpp"
#include "reference.hpp"

namespace adasr {
namespace {

// Rasters written by tests/fixtures/gen_bicubic_fixture.py.
Tensor load_fixture(const std::string& name) {
  std::ifstream in(std::string(ADASR_FIXTURE_DIR) + "/" + name);
  std::size_t h = 0;
  std::size_t w = 0;
  in >> h >> w;
  Tensor t(Shape{1, 1, h, w});
  for (float& v : t.data()) in >> v;
  EXPECT_TRUE(static_cast<bool>(in)) << name;
  return t;
}

TEST(CubicKernelTest, KnownValues) {
  EXPECT_DOUBLE_EQ(cubic_kernel(0.0), 1.0);
  EXPECT_DOUBLE_EQ(cubic_kernel(0.5), 0.5625);
  EXPECT_DOUBLE_EQ(cubic_kernel(1.0), 0.0);
  EXPECT_DOUBLE_EQ(cubic_kernel(1.5), -0.0625);
  EXPECT_DOUBLE_EQ(cubic_kernel(-1.5), -0.0625);
  EXPECT_DOUBLE_EQ(cubic_kernel(2.0), 0.0);
}

TEST(CubicKernelTest, PartitionOfUnityAtEveryPhase) {
  for (int k = 0; k < 1000; ++k) {
    const double phase = k / 1000.0;
    double sum = 0.0;
    for (int j = -3; j <= 3; ++j) sum += cubic_kernel(phase - j);
    ASSERT_NEAR(sum, 1.0, 1e-6) << phase;
  }
}

TEST(AxisWeightsTest, RowsSumToOne) {
  for (double scale : {0.25, 1.0 / 3.0, 0.5, 2.0, 3.0, 4.0}) {
    for (bool aa : {false, true}) {
      const std::size_t in = 17;
      const AxisWeights w = axis_weights(in, scaled_length(in, scale), scale, aa);
      for (std::size_t i = 0; i * w.taps < w.weight.size(); ++i) {
        double s = 0.0;
        for (std::size_t t = 0; t < w.taps; ++t) s += w.weight[i * w.taps + t];
        ASSERT_NEAR(s, 1.0, 1e-6);
      }
    }
  }
}

TEST(BicubicResizeTest, ConstantImageIsPreserved) {
  const Tensor c(Shape{1, 3, 9, 14}, 0.37f);
  for (double scale : {0.5, 1.0 / 3.0, 2.0, 3.0, 4.0}) {
    for (bool aa : {false, true}) {
      const Tensor out = bicubic_resize(c, scale, aa);
      for (float v : out.data()) ASSERT_NEAR(v, 0.37f, 1e-6);
    }
  }
}

TEST(BicubicResizeTest, UpscaleMatchesScalarFixture) {
  const Tensor src = load_fixture("bicubic_src.txt");
  const Tensor expected = load_fixture("bicubic_up2.txt");
  const Tensor got = bicubic_resize(src, 2.0, true);
  ASSERT_EQ(got.shape(), expected.shape());
  EXPECT_LE(testing::max_abs_diff(got, expected), 1e-3);
}

TEST(BicubicResizeTest, AntialiasedDownscaleMatchesScalarFixture) {
  const Tensor src = load_fixture("bicubic_down2_src.txt");
  const Tensor expected = load_fixture("bicubic_down2_aa.txt");
  const Tensor got = bicubic_resize(src, 0.5, true);
  ASSERT_EQ(got.shape(), expected.shape());
  EXPECT_LE(testing::max_abs_diff(got, expected), 1e-3);
}

TEST(BicubicResizeTest, AntialiasChangesDownscaleOnly) {
  std::mt19937 rng(3);
  const Tensor img = testing::random_tensor(Shape{1, 1, 16, 16}, rng, 0, 1);
  EXPECT_GT(testing::max_abs_diff(bicubic_resize(img, 0.5, true), bicubic_resize(img, 0.5, false)), 1e-3);
  EXPECT_EQ(testing::max_abs_diff(bicubic_resize(img, 2.0, true), bicubic_resize(img, 2.0, false)), 0.0);
}

TEST(BicubicResizeTest, Errors) {
  EXPECT_THROW(bicubic_resize(Tensor(Shape{1, 1, 4, 4}), 0.0), RangeError);
  EXPECT_THROW(bicubic_resize(Tensor(Shape{1, 1, 4, 4}), -2.0), RangeError);
}

TEST(DegradeTest, ShapesAndModcrop) {
  EXPECT_EQ(degrade(Tensor(Shape{1, 3, 48, 48}), 2).shape(), (Shape{1, 3, 24, 24}));
  EXPECT_EQ(degrade(Tensor(Shape{1, 3, 50, 47}), 3).shape(), (Shape{1, 3, 16, 15}));
  EXPECT_EQ(modcrop(Tensor(Shape{1, 3, 10, 11}), 4).shape(), (Shape{1, 3, 8, 8}));
}

}  // namespace
}  // namespace adasr
