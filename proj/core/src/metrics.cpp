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

#include "adasr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "adasr/error.hpp"

namespace adasr {

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(what) + ": shapes " + a.shape().str() + " and " + b.shape().str() + " differ");
  }
}

void require_crop(const Tensor& a, std::size_t border, const char* what) {
  if (2 * border >= a.h() || 2 * border >= a.w()) {
    throw RangeError(std::string(what) + ": border " + std::to_string(border) + " leaves nothing of " +
                     a.shape().str());
  }
}

// Cropped plane as doubles.
std::vector<double> crop_plane(const Tensor& t, std::size_t i, std::size_t j, std::size_t border) {
  const std::size_t h = t.h() - 2 * border;
  const std::size_t w = t.w() - 2 * border;
  std::vector<double> out(h * w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) out[y * w + x] = t.at(i, j, y + border, x + border);
  }
  return out;
}

constexpr std::size_t kWindow = 11;
constexpr double kSigma = 1.5;

std::vector<double> gaussian_taps() {
  std::vector<double> g(kWindow);
  double sum = 0.0;
  const double half = (kWindow - 1) / 2.0;
  for (std::size_t i = 0; i < kWindow; ++i) {
    const double d = static_cast<double>(i) - half;
    g[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

// "Valid" separable filtering: output is (h - 10) x (w - 10).
std::vector<double> filter_valid(const std::vector<double>& src, std::size_t h, std::size_t w,
                                 const std::vector<double>& g) {
  const std::size_t oh = h - kWindow + 1;
  const std::size_t ow = w - kWindow + 1;
  std::vector<double> tmp(h * ow);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double s = 0.0;
      for (std::size_t k = 0; k < kWindow; ++k) s += g[k] * src[y * w + x + k];
      tmp[y * ow + x] = s;
    }
  }
  std::vector<double> out(oh * ow);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double s = 0.0;
      for (std::size_t k = 0; k < kWindow; ++k) s += g[k] * tmp[(y + k) * ow + x];
      out[y * ow + x] = s;
    }
  }
  return out;
}

}  // namespace

double l1_loss(const Tensor& prediction, const Tensor& target) {
  require_same_shape(prediction, target, "l1_loss");
  const auto a = prediction.data();
  const auto b = target.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(static_cast<double>(a[i]) - b[i]);
  return sum / static_cast<double>(a.size());
}

double depth_loss(double average, double desired) { return std::max(0.0, average - desired); }

double total_loss(double reconstruction, double depth, double weight) { return reconstruction + weight * depth; }

Tensor rgb_to_y(const Tensor& rgb) {
  if (rgb.c() != 3) throw ShapeError("rgb_to_y expects 3 channels, got " + rgb.shape().str());
  Tensor y(Shape{rgb.n(), 1, rgb.h(), rgb.w()});
  for (std::size_t i = 0; i < rgb.n(); ++i) {
    auto r = rgb.channel(i, 0);
    auto g = rgb.channel(i, 1);
    auto b = rgb.channel(i, 2);
    auto dst = y.channel(i, 0);
    for (std::size_t p = 0; p < dst.size(); ++p) {
      dst[p] = static_cast<float>((65.738 * r[p] + 129.057 * g[p] + 25.064 * b[p]) / 255.0 + 16.0 / 255.0);
    }
  }
  return y;
}

double psnr(const Tensor& a, const Tensor& b, std::size_t border) {
  require_same_shape(a, b, "psnr");
  require_crop(a, border, "psnr");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = 0; j < a.c(); ++j) {
      const auto pa = crop_plane(a, i, j, border);
      const auto pb = crop_plane(b, i, j, border);
      for (std::size_t p = 0; p < pa.size(); ++p) {
        const double d = pa[p] - pb[p];
        sum += d * d;
      }
      count += pa.size();
    }
  }
  const double mse = sum / static_cast<double>(count);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Tensor& a, const Tensor& b, std::size_t border) {
  require_same_shape(a, b, "ssim");
  if (a.c() != 1 || a.n() != 1) throw ShapeError("ssim expects a single-channel image, got " + a.shape().str());
  require_crop(a, border, "ssim");
  const std::size_t h = a.h() - 2 * border;
  const std::size_t w = a.w() - 2 * border;
  if (h < kWindow || w < kWindow) {
    throw RangeError("ssim: cropped image " + std::to_string(h) + "x" + std::to_string(w) +
                     " smaller than the 11x11 window");
  }
  const double c1 = 0.01 * 0.01;
  const double c2 = 0.03 * 0.03;
  const auto g = gaussian_taps();
  const auto x = crop_plane(a, 0, 0, border);
  const auto y = crop_plane(b, 0, 0, border);
  std::vector<double> xx(x.size());
  std::vector<double> yy(x.size());
  std::vector<double> xy(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    xx[p] = x[p] * x[p];
    yy[p] = y[p] * y[p];
    xy[p] = x[p] * y[p];
  }
  const auto mu_x = filter_valid(x, h, w, g);
  const auto mu_y = filter_valid(y, h, w, g);
  const auto e_xx = filter_valid(xx, h, w, g);
  const auto e_yy = filter_valid(yy, h, w, g);
  const auto e_xy = filter_valid(xy, h, w, g);

  double total = 0.0;
  for (std::size_t p = 0; p < mu_x.size(); ++p) {
    const double mx = mu_x[p];
    const double my = mu_y[p];
    const double vx = e_xx[p] - mx * mx;
    const double vy = e_yy[p] - my * my;
    const double cov = e_xy[p] - mx * my;
    total += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mu_x.size());
}

}  // namespace adasr
