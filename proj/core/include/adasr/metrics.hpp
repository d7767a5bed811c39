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

#include "adasr/tensor.hpp"

namespace adasr {

/// Mean absolute difference over all elements.
double l1_loss(const Tensor& prediction, const Tensor& target);

/// Hinge on the average predicted depth: max(0, average - desired).
double depth_loss(double average, double desired);

inline constexpr double kDepthLossWeight = 0.01;

/// reconstruction + weight * depth.
double total_loss(double reconstruction, double depth, double weight = kDepthLossWeight);

/// BT.601 studio-swing luma of a (n, 3, h, w) RGB tensor in [0, 1]; returns (n, 1, h, w).
Tensor rgb_to_y(const Tensor& rgb);

/// PSNR in dB for data range 1 after cropping `border` pixels from every side.
/// Identical inputs give +infinity.
double psnr(const Tensor& a, const Tensor& b, std::size_t border);

/// Mean SSIM (11x11 Gaussian window, sigma 1.5, K1 0.01, K2 0.03, data range 1)
/// over window positions lying fully inside the cropped single-channel images.
double ssim(const Tensor& a, const Tensor& b, std::size_t border);

}  // namespace adasr
