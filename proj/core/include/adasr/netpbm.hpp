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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "adasr/gating.hpp"
#include "adasr/tensor.hpp"

namespace adasr {

// Binary netpbm codecs, 8-bit only (maxval 255). Samples map to [0, 1] by /255;
// writing clips to [0, 1] and rounds half away from zero.

/// P6 -> (1, 3, h, w) RGB tensor.
Tensor decode_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_ppm(const Tensor& image);
Tensor read_image(const std::filesystem::path& path);
void write_image(const Tensor& image, const std::filesystem::path& path);

/// P5 -> h x w plane of depths; byte b decodes to b / 255 * max_depth.
Plane decode_pgm_map(std::span<const std::uint8_t> bytes, double max_depth);
/// Each depth v is stored as round(v / max_depth * 255).
std::vector<std::uint8_t> encode_pgm_map(const Plane& depth, double max_depth);
Plane read_map(const std::filesystem::path& path, double max_depth);
void write_map(const Plane& depth, double max_depth, const std::filesystem::path& path);

/// Mean over groups, for visualizing multi-group depth maps.
Plane mean_over_groups(const DepthMap& depth);

/// Quantizes a [0, 1] sample to a byte.
std::uint8_t quantize_unit(float v);

}  // namespace adasr
