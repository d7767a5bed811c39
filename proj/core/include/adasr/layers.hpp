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
#include <optional>
#include <vector>

#include "adasr/conv.hpp"
#include "adasr/tensor.hpp"

namespace adasr {

/// Weights and geometry of one convolution layer.
struct ConvParams {
  ConvSpec spec;
  Tensor weight;
  std::vector<float> bias;

  ConvParams() = default;
  ConvParams(ConvSpec s, Tensor w, std::vector<float> b);

  /// Lowered convolution; returns the output and adds issued multiplies to counter.
  Tensor operator()(const Tensor& f, const LoweringOptions& opts = {}) const {
    return conv_lowered(f, weight, bias, spec, opts);
  }
};

/// Squeeze-and-excitation style gate: pool, 1x1 reduce, relu, 1x1 expand, sigmoid.
struct ChannelAttentionParams {
  ConvParams reduce;
  ConvParams expand;
};

enum class CaPool {
  kFull,     // mean over every spatial position
  kSupport,  // mean over the supplied support only
};

/// Scales each channel of `features` by its attention gate. With kSupport the
/// pooled statistics come from the positions set in `support` (an empty
/// support pools to zero). Multiplies issued by the two 1x1 layers are added
/// to `counter` when given.
Tensor channel_attention_apply(const Tensor& features, const ChannelAttentionParams& ca, CaPool pool,
                               const Support* support = nullptr, MacCounter* counter = nullptr);

}  // namespace adasr
