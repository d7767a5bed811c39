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

#include "adasr/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adasr/error.hpp"

namespace adasr {

std::string Shape::str() const {
  return "(" + std::to_string(n) + "," + std::to_string(c) + "," + std::to_string(h) + "," +
         std::to_string(w) + ")";
}

Tensor::Tensor(Shape shape, float fill) : shape_(shape) {
  if (shape.n == 0 || shape.c == 0 || shape.h == 0 || shape.w == 0) {
    throw ShapeError("tensor dimensions must be >= 1, got " + shape.str());
  }
  data_.assign(shape.count(), fill);
}

Tensor::Tensor(Shape shape, std::vector<float> data) : shape_(shape), data_(std::move(data)) {
  if (shape.n == 0 || shape.c == 0 || shape.h == 0 || shape.w == 0) {
    throw ShapeError("tensor dimensions must be >= 1, got " + shape.str());
  }
  if (data_.size() != shape.count()) {
    throw ShapeError("tensor data length " + std::to_string(data_.size()) + " does not match shape " +
                     shape.str());
  }
}

std::size_t support_count(const Support& s) {
  return static_cast<std::size_t>(std::count_if(s.values.begin(), s.values.end(), [](unsigned char v) { return v != 0; }));
}

void relu_inplace(Tensor& t) {
  for (float& v : t.data()) v = v > 0.0f ? v : 0.0f;
}

void prelu_inplace(Tensor& t, std::span<const float> slopes) {
  if (slopes.size() != t.c()) {
    throw ParameterError("prelu expects " + std::to_string(t.c()) + " slopes, got " +
                         std::to_string(slopes.size()));
  }
  for (std::size_t i = 0; i < t.n(); ++i) {
    for (std::size_t j = 0; j < t.c(); ++j) {
      const float a = slopes[j];
      for (float& v : t.channel(i, j)) v = v >= 0.0f ? v : a * v;
    }
  }
}

namespace {

struct ActivationVisitor {
  Tensor& t;
  void operator()(const Relu&) const { relu_inplace(t); }
  void operator()(const PRelu& p) const { prelu_inplace(t, p.slopes); }
  void operator()(const Sigmoid&) const {
    for (float& v : t.data()) v = 1.0f / (1.0f + std::exp(-v));
  }
};

}  // namespace

Tensor activation(const Tensor& t, const Activation& kind) {
  Tensor out = t;
  std::visit(ActivationVisitor{out}, kind);
  return out;
}

Tensor pixel_shuffle(const Tensor& t, std::size_t r) {
  if (r == 0) throw ShapeError("pixel_shuffle factor must be >= 1");
  const std::size_t rr = r * r;
  if (t.c() % rr != 0) {
    throw ShapeError("pixel_shuffle: channels " + std::to_string(t.c()) + " not divisible by " +
                     std::to_string(rr));
  }
  const std::size_t oc = t.c() / rr;
  Tensor out(Shape{t.n(), oc, t.h() * r, t.w() * r});
  for (std::size_t i = 0; i < t.n(); ++i) {
    for (std::size_t j = 0; j < oc; ++j) {
      for (std::size_t p = 0; p < r; ++p) {
        for (std::size_t q = 0; q < r; ++q) {
          auto src = t.channel(i, j * rr + p * r + q);
          for (std::size_t y = 0; y < t.h(); ++y) {
            for (std::size_t x = 0; x < t.w(); ++x) {
              out.at(i, j, y * r + p, x * r + q) = src[y * t.w() + x];
            }
          }
        }
      }
    }
  }
  return out;
}

Tensor global_avg_pool(const Tensor& t) {
  Tensor out(Shape{t.n(), t.c(), 1, 1});
  const double inv = 1.0 / static_cast<double>(t.shape().plane());
  for (std::size_t i = 0; i < t.n(); ++i) {
    for (std::size_t j = 0; j < t.c(); ++j) {
      auto ch = t.channel(i, j);
      const double sum = std::accumulate(ch.begin(), ch.end(), 0.0);
      out.at(i, j, 0, 0) = static_cast<float>(sum * inv);
    }
  }
  return out;
}

Tensor broadcast_mul(const Tensor& t, std::span<const float> channel_factors) {
  if (channel_factors.size() != t.c()) {
    throw ShapeError("broadcast_mul: " + std::to_string(channel_factors.size()) +
                     " channel factors for " + std::to_string(t.c()) + " channels");
  }
  Tensor out = t;
  for (std::size_t i = 0; i < t.n(); ++i) {
    for (std::size_t j = 0; j < t.c(); ++j) {
      const float f = channel_factors[j];
      for (float& v : out.channel(i, j)) v *= f;
    }
  }
  return out;
}

Tensor broadcast_mul(const Tensor& t, const Plane& spatial) {
  if (spatial.h != t.h() || spatial.w != t.w()) {
    throw ShapeError("broadcast_mul: spatial map " + std::to_string(spatial.h) + "x" +
                     std::to_string(spatial.w) + " does not match tensor " + t.shape().str());
  }
  Tensor out = t;
  for (std::size_t i = 0; i < t.n(); ++i) {
    for (std::size_t j = 0; j < t.c(); ++j) {
      auto ch = out.channel(i, j);
      for (std::size_t p = 0; p < ch.size(); ++p) ch[p] *= spatial.values[p];
    }
  }
  return out;
}

}  // namespace adasr
