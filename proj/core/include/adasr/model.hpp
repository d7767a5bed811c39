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
#include <string>
#include <vector>

#include "adasr/adapter.hpp"
#include "adasr/config.hpp"
#include "adasr/gating.hpp"
#include "adasr/report.hpp"
#include "adasr/weights.hpp"

namespace adasr {

/// Name and on-disk dims of one parameter tensor required by a config.
struct ParamInfo {
  std::string name;
  std::vector<std::uint32_t> dims;
};

/// Every parameter the config needs, in canonical order (head, adapter, body, tail).
std::vector<ParamInfo> parameter_layout(const ModelConfig& cfg);

/// Throws ParameterError on any missing, extra, or mis-shaped tensor.
void validate_weights(const ModelConfig& cfg, const WeightStore& store);

/// Seeded test weights: conv weights uniform in [-0.05, 0.05], biases zero,
/// PReLU slopes 0.25. Identical seeds give bitwise-identical stores.
WeightStore random_weights(const ModelConfig& cfg, std::uint64_t seed);

struct ForwardOptions {
  ExecMode mode = ExecMode::kSparseExact;
  CaPool ca_pool = CaPool::kFull;
  /// Replaces the adapter prediction (the adapter is then not run).
  std::optional<DepthMap> depth_override;
};

struct ForwardResult {
  Tensor image;  // not clipped
  DepthMap depth;
  EfficiencyReport report;
};

/// Mean shift, head conv, adapter, gated trunk, conv + pixel-shuffle
/// upsampler, output conv, mean restore.
class Model {
 public:
  Model(ModelConfig cfg, const WeightStore& weights);

  const ModelConfig& config() const { return cfg_; }
  const ConvParams& head() const { return head_; }
  const AdapterWeights& adapter() const { return adapter_; }
  const TrunkParams& trunk() const { return trunk_; }
  const std::vector<ConvParams>& upsampler() const { return upsampler_; }
  const ConvParams& output() const { return output_; }

  /// x is (1, 3, h, w) in [0, 1].
  ForwardResult forward(const Tensor& x, double desired_depth, const ForwardOptions& opts = {}) const;

 private:
  ModelConfig cfg_;
  ConvParams head_;
  AdapterWeights adapter_;
  TrunkParams trunk_;
  std::vector<ConvParams> upsampler_;
  ConvParams output_;
};

}  // namespace adasr
