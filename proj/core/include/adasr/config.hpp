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

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace adasr {

/// Architecture hyper-parameters of a depth-gated backbone.
struct ModelConfig {
  int scale = 2;
  std::size_t feat_channels = 64;
  std::size_t groups = 1;
  std::size_t blocks = 16;  // residual blocks per group
  bool channel_attention = false;
  std::size_t ca_reduction = 16;
  bool group_skip = false;
  bool group_tail = false;  // conv closing each residual group
  bool body_tail = true;    // conv closing the whole trunk
  float res_scale = 1.0f;
  std::array<float, 3> rgb_mean{0.4488f, 0.4371f, 0.4040f};
  std::size_t adapter_channels = 64;

  /// 32 blocks of 256 channels, one group, residual scale 0.1.
  static ModelConfig edsr(int scale = 2);
  /// 10 groups of 20 channel-attention blocks, 64 channels.
  static ModelConfig rcan(int scale = 2);

  /// Throws ConfigError on unsupported values.
  void validate() const;
  /// Pixel-shuffle factors of the upsampler stages: x2 -> {2}, x3 -> {3}, x4 -> {2, 2}.
  std::vector<int> upsample_factors() const;

  bool operator==(const ModelConfig&) const = default;
};

/// Parses key=value lines. `preset` is applied first, explicit keys override it.
/// Blank lines and '#' comments are ignored.
ModelConfig parse_config(std::string_view text);
ModelConfig load_config(const std::filesystem::path& path);
std::string format_config(const ModelConfig& cfg);

}  // namespace adasr
