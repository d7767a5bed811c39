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

#include "adasr/layers.hpp"

#include "adasr/error.hpp"

namespace adasr {

ConvParams::ConvParams(ConvSpec s, Tensor w, std::vector<float> b)
    : spec(s), weight(std::move(w)), bias(std::move(b)) {
  spec.validate();
  if (weight.shape() != spec.weight_shape()) {
    throw ParameterError("conv weight shape " + weight.shape().str() + " does not match " +
                         spec.weight_shape().str());
  }
  if (spec.has_bias != !bias.empty() || (spec.has_bias && bias.size() != spec.out_channels)) {
    throw ParameterError("conv bias length " + std::to_string(bias.size()) + " does not match " +
                         std::to_string(spec.out_channels) + " output channels");
  }
}

Tensor channel_attention_apply(const Tensor& features, const ChannelAttentionParams& ca, CaPool pool,
                               const Support* support, MacCounter* counter) {
  const std::size_t c = features.c();
  if (ca.reduce.spec.in_channels != c || ca.expand.spec.out_channels != c ||
      ca.reduce.spec.out_channels != ca.expand.spec.in_channels || ca.reduce.spec.kh != 1 ||
      ca.expand.spec.kh != 1) {
    throw ParameterError("channel attention weights do not fit " + std::to_string(c) + " channels");
  }
  if (pool == CaPool::kSupport) {
    if (!support) throw ParameterError("channel attention: support pooling needs a support map");
    if (support->h != features.h() || support->w != features.w()) {
      throw ShapeError("channel attention: support does not match feature size");
    }
  }

  Tensor out = features;
  for (std::size_t i = 0; i < features.n(); ++i) {
    Tensor pooled(Shape{1, c, 1, 1});
    for (std::size_t j = 0; j < c; ++j) {
      auto ch = features.channel(i, j);
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t p = 0; p < ch.size(); ++p) {
        if (pool == CaPool::kSupport && !support->values[p]) continue;
        sum += ch[p];
        ++n;
      }
      pooled.at(0, j, 0, 0) = n ? static_cast<float>(sum / static_cast<double>(n)) : 0.0f;
    }
    LoweringOptions opts;
    opts.counter = counter;
    Tensor hidden = ca.reduce(pooled, opts);
    relu_inplace(hidden);
    Tensor gate = activation(ca.expand(hidden, opts), Sigmoid{});
    for (std::size_t j = 0; j < c; ++j) {
      const float g = gate.at(0, j, 0, 0);
      for (float& v : out.channel(i, j)) v *= g;
    }
  }
  return out;
}

}  // namespace adasr
