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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adasr/tensor.hpp"

namespace adasr {

/// Geometry of one 2-D convolution layer. Network layers use odd kernels;
/// the engine itself accepts any kernel size with explicit padding.
struct ConvSpec {
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t kh = 3;
  std::size_t kw = 3;
  std::size_t stride = 1;
  std::size_t padding = 1;
  bool has_bias = true;

  /// k x k kernel, stride 1, "same" zero padding.
  static ConvSpec same(std::size_t in, std::size_t out, std::size_t k = 3, bool bias = true) {
    return ConvSpec{in, out, k, k, 1, k / 2, bias};
  }

  std::size_t out_h(std::size_t h) const { return (h + 2 * padding - kh) / stride + 1; }
  std::size_t out_w(std::size_t w) const { return (w + 2 * padding - kw) / stride + 1; }
  /// Width of one lowered row: in_channels * kh * kw.
  std::size_t cols() const { return in_channels * kh * kw; }
  Shape weight_shape() const { return Shape{out_channels, in_channels, kh, kw}; }

  void validate() const;
};

struct Pos {
  std::uint32_t y = 0;
  std::uint32_t x = 0;
  bool operator==(const Pos&) const = default;
};

/// im2col output: one row per retained output position, in raster order.
struct LoweredMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;
  std::vector<Pos> row_index;

  std::span<const float> row(std::size_t r) const {
    return std::span<const float>(data).subspan(r * cols, cols);
  }
};

/// Counts multiplications actually issued by the lowered GEMM.
class MacCounter {
 public:
  void add(std::uint64_t n) { value_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t value() const { return value_.load(std::memory_order_relaxed); }
  void reset() { value_.store(0); }

 private:
  std::atomic<std::uint64_t> value_{0};
};

struct LoweringOptions {
  /// Output positions to compute; null means all of them.
  const Support* support = nullptr;
  /// Value written at positions outside the support.
  float fill = 0.0f;
  MacCounter* counter = nullptr;
};

/// Reference cross-correlation with zero padding; plain nested loops.
/// bias may be empty when spec.has_bias is false.
Tensor direct_conv(const Tensor& f, const Tensor& weight, std::span<const float> bias,
                   const ConvSpec& spec);

/// Lowers sample `sample` of f. Rows are laid out channel-major, then kernel
/// row, then kernel column, with padding materialized as zeros.
LoweredMatrix im2col(const Tensor& f, const ConvSpec& spec, const Support* support = nullptr,
                     std::size_t sample = 0);

/// Convolution as (lowered rows) x (cols x out_channels) matrix product.
/// Rows outside opts.support are never built or multiplied.
Tensor conv_lowered(const Tensor& f, const Tensor& weight, std::span<const float> bias,
                    const ConvSpec& spec, const LoweringOptions& opts = {});

/// out_channels * in_channels * kh * kw * retained_positions.
std::uint64_t count_macs(const ConvSpec& spec, std::uint64_t retained_positions);

}  // namespace adasr
