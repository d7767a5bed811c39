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
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace adasr {

/// NCHW extent of a tensor. Every dimension is at least one.
struct Shape {
  std::size_t n = 1;
  std::size_t c = 1;
  std::size_t h = 1;
  std::size_t w = 1;

  std::size_t count() const { return n * c * h * w; }
  std::size_t plane() const { return h * w; }
  bool operator==(const Shape&) const = default;
  std::string str() const;
};

/// Dense row-major NCHW float tensor.
class Tensor {
 public:
  Tensor() : Tensor(Shape{}) {}
  explicit Tensor(Shape shape, float fill = 0.0f);
  Tensor(Shape shape, std::vector<float> data);

  const Shape& shape() const { return shape_; }
  std::size_t n() const { return shape_.n; }
  std::size_t c() const { return shape_.c; }
  std::size_t h() const { return shape_.h; }
  std::size_t w() const { return shape_.w; }
  std::size_t size() const { return data_.size(); }

  std::size_t offset(std::size_t i, std::size_t j, std::size_t y, std::size_t x) const {
    return ((i * shape_.c + j) * shape_.h + y) * shape_.w + x;
  }
  float& at(std::size_t i, std::size_t j, std::size_t y, std::size_t x) {
    return data_[offset(i, j, y, x)];
  }
  float at(std::size_t i, std::size_t j, std::size_t y, std::size_t x) const {
    return data_[offset(i, j, y, x)];
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  /// One h*w plane of sample i, channel j.
  std::span<float> channel(std::size_t i, std::size_t j) {
    return std::span<float>(data_).subspan(offset(i, j, 0, 0), shape_.plane());
  }
  std::span<const float> channel(std::size_t i, std::size_t j) const {
    return std::span<const float>(data_).subspan(offset(i, j, 0, 0), shape_.plane());
  }

 private:
  Shape shape_;
  std::vector<float> data_;
};

/// Row-major h*w grid. Used for depth channels, gate coefficients and supports.
template <typename T>
struct Grid {
  std::size_t h = 0;
  std::size_t w = 0;
  std::vector<T> values;

  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{}) : h(rows), w(cols), values(rows * cols, fill) {}
  Grid(std::size_t rows, std::size_t cols, std::vector<T> v) : h(rows), w(cols), values(std::move(v)) {}

  T& operator()(std::size_t y, std::size_t x) { return values[y * w + x]; }
  const T& operator()(std::size_t y, std::size_t x) const { return values[y * w + x]; }
  std::size_t size() const { return values.size(); }
  bool operator==(const Grid&) const = default;
};

using Plane = Grid<float>;
/// Positions requiring computation; nonzero means set.
using Support = Grid<unsigned char>;

std::size_t support_count(const Support& s);

// Activations.
struct Relu {};
struct PRelu {
  std::vector<float> slopes;  // one per channel
};
struct Sigmoid {};
using Activation = std::variant<Relu, PRelu, Sigmoid>;

Tensor activation(const Tensor& t, const Activation& kind);
void relu_inplace(Tensor& t);
void prelu_inplace(Tensor& t, std::span<const float> slopes);

Tensor pixel_shuffle(const Tensor& t, std::size_t r);

/// Per-channel mean over all spatial positions, shape (n, c, 1, 1).
Tensor global_avg_pool(const Tensor& t);

/// Scales channel j of every sample by factors[j].
Tensor broadcast_mul(const Tensor& t, std::span<const float> channel_factors);
/// Multiplies every channel by the same h*w map.
Tensor broadcast_mul(const Tensor& t, const Plane& spatial);

}  // namespace adasr
