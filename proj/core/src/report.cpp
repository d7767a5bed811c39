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

#include "adasr/report.hpp"

namespace adasr {

namespace {

template <typename Pred, typename Field>
std::uint64_t sum_if(const std::vector<LayerCost>& layers, Pred pred, Field field) {
  std::uint64_t total = 0;
  for (const auto& l : layers) {
    if (pred(l)) total += field(l);
  }
  return total;
}

constexpr auto kDense = [](const LayerCost& l) { return l.dense_macs; };
constexpr auto kRetained = [](const LayerCost& l) { return l.retained_macs; };
constexpr auto kAll = [](const LayerCost&) { return true; };
constexpr auto kGated = [](const LayerCost& l) { return l.gated; };

}  // namespace

void EfficiencyReport::add(std::string name, std::uint64_t dense, std::uint64_t retained, bool gated) {
  layers.push_back(LayerCost{std::move(name), dense, retained, gated});
}

std::uint64_t EfficiencyReport::dense_macs() const { return sum_if(layers, kAll, kDense); }
std::uint64_t EfficiencyReport::retained_macs() const { return sum_if(layers, kAll, kRetained); }
std::uint64_t EfficiencyReport::gated_dense_macs() const { return sum_if(layers, kGated, kDense); }
std::uint64_t EfficiencyReport::gated_retained_macs() const { return sum_if(layers, kGated, kRetained); }

std::uint64_t EfficiencyReport::retained_macs(const std::string& prefix) const {
  return sum_if(layers, [&](const LayerCost& l) { return l.name.starts_with(prefix); }, kRetained);
}

std::uint64_t EfficiencyReport::dense_macs(const std::string& prefix) const {
  return sum_if(layers, [&](const LayerCost& l) { return l.name.starts_with(prefix); }, kDense);
}

}  // namespace adasr
