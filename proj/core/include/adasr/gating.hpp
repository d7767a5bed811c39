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
#include <optional>
#include <string_view>
#include <vector>

#include "adasr/layers.hpp"
#include "adasr/report.hpp"
#include "adasr/tensor.hpp"

namespace adasr {

/// How gated residual blocks are executed.
enum class ExecMode {
  kDense,        // compute everywhere, then gate; the reference semantics
  kSparseExact,  // inner conv on the support dilated by the outer kernel radius
  kSparseFast,   // both convs on the support only (approximate)
};

std::string_view to_string(ExecMode mode);
ExecMode parse_exec_mode(std::string_view text);
std::string_view to_string(CaPool pool);
CaPool parse_ca_pool(std::string_view text);

/// Per-group, per-pixel network depth, G x H x W.
class DepthMap {
 public:
  DepthMap(std::size_t groups, std::size_t h, std::size_t w, float fill = 0.0f);
  DepthMap(std::size_t groups, std::size_t h, std::size_t w, std::vector<float> values);

  std::size_t groups() const { return groups_; }
  std::size_t h() const { return h_; }
  std::size_t w() const { return w_; }
  float& at(std::size_t g, std::size_t y, std::size_t x) { return values_[(g * h_ + y) * w_ + x]; }
  float at(std::size_t g, std::size_t y, std::size_t x) const { return values_[(g * h_ + y) * w_ + x]; }
  const std::vector<float>& values() const { return values_; }
  Plane channel(std::size_t g) const;

 private:
  std::size_t groups_;
  std::size_t h_;
  std::size_t w_;
  std::vector<float> values_;
};

/// Piecewise-linear gate of block l (1-based): 0 below l-1, 1 above l, linear between.
double gate_coefficient(double depth, int l);

/// Gate coefficients of one block and the positions where they are positive.
struct BlockMask {
  Plane coefficients;
  Support support;
};

BlockMask block_mask(const Plane& depth, int l);

/// Masks for blocks 1..blocks. Throws RangeError for entries outside [0, blocks].
std::vector<BlockMask> masks_from_depth(const Plane& depth, int blocks);

/// Sets every position within Chebyshev distance `radius` of a set position.
Support dilate_support(const Support& support, std::size_t radius);

struct ResidualBlockParams {
  ConvParams conv1;
  ConvParams conv2;
  std::optional<ChannelAttentionParams> ca;
};

struct BlockOptions {
  ExecMode mode = ExecMode::kSparseExact;
  CaPool ca_pool = CaPool::kFull;
  float res_scale = 1.0f;
};

/// Issued multiplies of one block call.
struct BlockStats {
  std::uint64_t conv1_macs = 0;
  std::uint64_t conv2_macs = 0;
  std::uint64_t ca_macs = 0;
};

/// z + m (.) res_scale * F(z), with F = conv2(relu(conv1(z))) and an optional
/// channel-attention scale on the conv2 output.
Tensor gated_residual_block(const Tensor& z, const ResidualBlockParams& block, const BlockMask& mask,
                            const BlockOptions& opts, BlockStats* stats = nullptr);

struct ResidualGroupParams {
  std::vector<ResidualBlockParams> blocks;
  std::optional<ConvParams> tail;
};

/// Wiring of the residual trunk between the head conv and the upsampler.
struct TrunkParams {
  std::vector<ResidualGroupParams> groups;
  std::optional<ConvParams> tail;
  bool group_skip = false;
  bool long_skip = true;
  float res_scale = 1.0f;
};

struct TrunkOptions {
  ExecMode mode = ExecMode::kSparseExact;
  CaPool ca_pool = CaPool::kFull;
};

struct TrunkResult {
  Tensor z_out;
  /// Gate support size of each block, group-major.
  std::vector<std::size_t> block_support;
};

/// Runs the gated trunk. Depth entries are clamped to [0, blocks per group].
/// Layer costs are appended to report when given.
TrunkResult trunk_forward(const Tensor& z0, const TrunkParams& trunk, const DepthMap& depth,
                          const TrunkOptions& opts, EfficiencyReport* report = nullptr);

}  // namespace adasr
