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

#include "adasr/resize.hpp"

#include <algorithm>
#include <cmath>

#include "adasr/error.hpp"

namespace adasr {

double cubic_kernel(double x) {
  constexpr double a = -0.5;
  const double ax = std::abs(x);
  const double ax2 = ax * ax;
  const double ax3 = ax2 * ax;
  if (ax <= 1.0) return (a + 2.0) * ax3 - (a + 3.0) * ax2 + 1.0;
  if (ax < 2.0) return a * ax3 - 5.0 * a * ax2 + 8.0 * a * ax - 4.0 * a;
  return 0.0;
}

std::size_t scaled_length(std::size_t len, double scale) {
  // Guard against 0.5 * 48 landing a hair above 24.
  return static_cast<std::size_t>(std::ceil(static_cast<double>(len) * scale - 1e-9));
}

AxisWeights axis_weights(std::size_t in_len, std::size_t out_len, double scale, bool antialias) {
  if (!(scale > 0.0)) throw RangeError("resize scale must be positive");
  if (in_len == 0 || out_len == 0) throw RangeError("resize lengths must be positive");
  const double stretch = (antialias && scale < 1.0) ? 1.0 / scale : 1.0;
  const double width = 4.0 * stretch;

  AxisWeights aw;
  aw.taps = static_cast<std::size_t>(std::ceil(width)) + 2;
  aw.index.resize(out_len * aw.taps);
  aw.weight.resize(out_len * aw.taps);
  const auto last = static_cast<long>(in_len) - 1;
  for (std::size_t i = 0; i < out_len; ++i) {
    const double center = (static_cast<double>(i) + 0.5) / scale - 0.5;
    const auto left = static_cast<long>(std::floor(center - width / 2.0));
    double sum = 0.0;
    for (std::size_t t = 0; t < aw.taps; ++t) {
      const long j = left + static_cast<long>(t);
      const double wgt = cubic_kernel((center - static_cast<double>(j)) / stretch) / stretch;
      aw.index[i * aw.taps + t] = static_cast<std::size_t>(std::clamp(j, 0L, last));
      aw.weight[i * aw.taps + t] = wgt;
      sum += wgt;
    }
    for (std::size_t t = 0; t < aw.taps; ++t) aw.weight[i * aw.taps + t] /= sum;
  }
  return aw;
}

Tensor bicubic_resize(const Tensor& img, double scale, bool antialias) {
  if (!(scale > 0.0)) throw RangeError("resize scale must be positive");
  const std::size_t oh = scaled_length(img.h(), scale);
  const std::size_t ow = scaled_length(img.w(), scale);
  if (oh == 0 || ow == 0) throw RangeError("resize produces an empty image");
  const AxisWeights ax = axis_weights(img.w(), ow, scale, antialias);
  const AxisWeights ay = axis_weights(img.h(), oh, scale, antialias);

  Tensor out(Shape{img.n(), img.c(), oh, ow});
  std::vector<double> rows(img.h() * ow);
  for (std::size_t i = 0; i < img.n(); ++i) {
    for (std::size_t j = 0; j < img.c(); ++j) {
      auto src = img.channel(i, j);
      for (std::size_t y = 0; y < img.h(); ++y) {
        for (std::size_t x = 0; x < ow; ++x) {
          double s = 0.0;
          for (std::size_t t = 0; t < ax.taps; ++t) {
            s += ax.weight[x * ax.taps + t] * src[y * img.w() + ax.index[x * ax.taps + t]];
          }
          rows[y * ow + x] = s;
        }
      }
      auto dst = out.channel(i, j);
      for (std::size_t y = 0; y < oh; ++y) {
        for (std::size_t x = 0; x < ow; ++x) {
          double s = 0.0;
          for (std::size_t t = 0; t < ay.taps; ++t) {
            s += ay.weight[y * ay.taps + t] * rows[ay.index[y * ay.taps + t] * ow + x];
          }
          dst[y * ow + x] = static_cast<float>(s);
        }
      }
    }
  }
  return out;
}

Tensor modcrop(const Tensor& img, std::size_t scale) {
  if (scale == 0) throw RangeError("modcrop scale must be >= 1");
  const std::size_t h = img.h() - img.h() % scale;
  const std::size_t w = img.w() - img.w() % scale;
  if (h == 0 || w == 0) throw RangeError("image " + img.shape().str() + " smaller than scale");
  Tensor out(Shape{img.n(), img.c(), h, w});
  for (std::size_t i = 0; i < img.n(); ++i) {
    for (std::size_t j = 0; j < img.c(); ++j) {
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) out.at(i, j, y, x) = img.at(i, j, y, x);
      }
    }
  }
  return out;
}

Tensor degrade(const Tensor& hr, std::size_t scale) {
  return bicubic_resize(modcrop(hr, scale), 1.0 / static_cast<double>(scale), true);
}

}  // namespace adasr
