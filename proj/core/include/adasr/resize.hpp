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

#pragma once

#include <cstddef>
#include <vector>

#include "adasr/tensor.hpp"

namespace adasr {

/// Cubic convolution kernel with a = -0.5.
double cubic_kernel(double x);

/// Sample weights of one resampled axis: output i reads input indices
/// `index[i][t]` (already clamped to the border) with weights `weight[i][t]`.
struct AxisWeights {
  std::size_t taps = 0;
  std::vector<std::size_t> index;  // out_len * taps
  std::vector<double> weight;      // out_len * taps, each row sums to 1
};

/// Source coordinate of output i is (i + 0.5) / scale - 0.5. When antialias is
/// set and scale < 1 the kernel is stretched by 1 / scale.
AxisWeights axis_weights(std::size_t in_len, std::size_t out_len, double scale, bool antialias);

/// Output extent for a scale factor: ceil(len * scale).
std::size_t scaled_length(std::size_t len, double scale);

/// Separable bicubic resize of every channel, width first.
Tensor bicubic_resize(const Tensor& img, double scale, bool antialias = true);

/// Crops the bottom/right so both sides are multiples of scale.
Tensor modcrop(const Tensor& img, std::size_t scale);

/// Bicubic degradation: modcrop then antialiased 1/scale downscale.
Tensor degrade(const Tensor& hr, std::size_t scale);

}  // namespace adasr
