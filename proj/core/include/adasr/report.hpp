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
#include <string>
#include <vector>

namespace adasr {

/// Multiply-accumulate cost of one executed layer.
struct LayerCost {
  std::string name;
  std::uint64_t dense_macs = 0;     // cost if every output position were computed
  std::uint64_t retained_macs = 0;  // multiplies actually issued
  bool gated = false;               // belongs to a depth-gated residual block
};

/// Per-layer cost accounting for one forward pass. FLOPs are 2 * MACs.
struct EfficiencyReport {
  std::vector<LayerCost> layers;
  double average_depth = 0.0;
  double wall_ms = 0.0;

  void add(std::string name, std::uint64_t dense, std::uint64_t retained, bool gated = false);

  std::uint64_t dense_macs() const;
  std::uint64_t retained_macs() const;
  std::uint64_t gated_dense_macs() const;
  std::uint64_t gated_retained_macs() const;
  /// Sums over layers whose name starts with prefix.
  std::uint64_t retained_macs(const std::string& prefix) const;
  std::uint64_t dense_macs(const std::string& prefix) const;

  std::uint64_t total_flops() const { return 2 * retained_macs(); }
  std::uint64_t dense_flops() const { return 2 * dense_macs(); }
};

}  // namespace adasr
