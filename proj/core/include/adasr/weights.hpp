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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "adasr/tensor.hpp"

namespace adasr {

/// One named parameter as stored on disk: its own rank and row-major values.
struct NamedTensor {
  std::string name;
  std::vector<std::uint32_t> dims;
  std::vector<float> values;

  std::size_t element_count() const;
  /// Pads dims on the left with ones to form an NCHW tensor (rank <= 4).
  Tensor to_tensor() const;
};

/// Ordered name -> tensor map. Order is insertion order and is kept on save.
class WeightStore {
 public:
  void insert(std::string name, std::vector<std::uint32_t> dims, std::vector<float> values);
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  const NamedTensor* find(const std::string& name) const;
  const NamedTensor& at(const std::string& name) const;
  NamedTensor& at(const std::string& name);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<NamedTensor> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Layout (little-endian):
//   "ADSR" | u32 version=1 | u32 tensor_count |
//   per tensor: u32 name_len | name | u8 dtype=0 | u8 ndim | u32 dims[ndim] | f32 payload
inline constexpr std::uint32_t kWeightFileVersion = 1;

std::vector<std::uint8_t> serialize_weights(const WeightStore& store);
/// Throws FormatError carrying the byte offset of the first problem.
WeightStore parse_weights(std::span<const std::uint8_t> bytes);

void save_weights(const WeightStore& store, const std::filesystem::path& path);
WeightStore load_weights(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace adasr
