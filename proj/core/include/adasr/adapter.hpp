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
#include <vector>

#include "adasr/gating.hpp"
#include "adasr/layers.hpp"
#include "adasr/report.hpp"

namespace adasr {

/// Depth-prediction network: four conv+PReLU layers, then conv+ReLU.
struct AdapterWeights {
  std::array<ConvParams, 5> convs;
  std::array<std::vector<float>, 4> slopes;

  /// Throws ParameterError unless layer 1 reads feat_channels and layer 5 emits groups.
  void validate(std::size_t feat_channels, std::size_t groups) const;
};

/// Predicts a G x H x W depth map from head features. The first layer's
/// weight (not its bias) is multiplied by desired_depth; outputs are clamped
/// to [0, blocks].
DepthMap adapter_forward(const Tensor& z0, double desired_depth, const AdapterWeights& weights, int blocks,
                         std::size_t groups, EfficiencyReport* report = nullptr);

double average_depth(const DepthMap& map);

}  // namespace adasr
