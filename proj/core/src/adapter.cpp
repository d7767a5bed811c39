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

#include "adasr/adapter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "adasr/error.hpp"

namespace adasr {

void AdapterWeights::validate(std::size_t feat_channels, std::size_t groups) const {
  if (convs[0].spec.in_channels != feat_channels) {
    throw ParameterError("adapter layer 1 expects " + std::to_string(convs[0].spec.in_channels) +
                         " input channels, backbone has " + std::to_string(feat_channels));
  }
  if (convs[4].spec.out_channels != groups) {
    throw ParameterError("adapter emits " + std::to_string(convs[4].spec.out_channels) + " maps for " +
                         std::to_string(groups) + " groups");
  }
  for (std::size_t i = 1; i < convs.size(); ++i) {
    if (convs[i].spec.in_channels != convs[i - 1].spec.out_channels) {
      throw ParameterError("adapter layer " + std::to_string(i + 1) + " input does not match layer " +
                           std::to_string(i) + " output");
    }
  }
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (slopes[i].size() != convs[i].spec.out_channels) {
      throw ParameterError("adapter prelu" + std::to_string(i + 1) + " has " + std::to_string(slopes[i].size()) +
                           " slopes for " + std::to_string(convs[i].spec.out_channels) + " channels");
    }
  }
}

DepthMap adapter_forward(const Tensor& z0, double desired_depth, const AdapterWeights& weights, int blocks,
                         std::size_t groups, EfficiencyReport* report) {
  if (!(desired_depth >= 0.0)) throw RangeError("desired depth must be >= 0");
  if (z0.n() != 1) throw ShapeError("adapter expects a single sample");
  if (z0.c() != weights.convs[0].spec.in_channels) {
    throw ShapeError("adapter input has " + std::to_string(z0.c()) + " channels, layer 1 expects " +
                     std::to_string(weights.convs[0].spec.in_channels));
  }
  weights.validate(z0.c(), groups);

  const std::uint64_t positions = z0.h() * z0.w();
  Tensor x = z0;
  for (std::size_t i = 0; i < weights.convs.size(); ++i) {
    const ConvParams& layer = weights.convs[i];
    MacCounter counter;
    LoweringOptions opts;
    opts.counter = &counter;
    if (i == 0) {
      Tensor scaled = layer.weight;
      const auto d = static_cast<float>(desired_depth);
      for (float& v : scaled.data()) v *= d;
      x = conv_lowered(x, scaled, layer.bias, layer.spec, opts);
    } else {
      x = layer(x, opts);
    }
    if (i < weights.slopes.size()) {
      prelu_inplace(x, weights.slopes[i]);
    } else {
      relu_inplace(x);
    }
    if (report) {
      report->add("adapter.conv" + std::to_string(i + 1), count_macs(layer.spec, positions), counter.value());
    }
  }

  const auto cap = static_cast<float>(blocks);
  std::vector<float> values(x.data().begin(), x.data().end());
  for (float& v : values) v = std::min(v, cap);
  return DepthMap(groups, x.h(), x.w(), std::move(values));
}

double average_depth(const DepthMap& map) {
  const auto& v = map.values();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace adasr
