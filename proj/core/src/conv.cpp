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

#include "adasr/conv.hpp"

#include <algorithm>
#include <array>

#include "adasr/error.hpp"
#include "adasr/parallel.hpp"

namespace adasr {

namespace {

constexpr std::size_t kRowTile = 8;     // rows sharing one pass over the kernel matrix
constexpr std::size_t kOutBlock = 64;   // output channels per accumulator block
constexpr std::size_t kRowsPerTask = 64;

void check_inputs(const Tensor& f, const Tensor& weight, std::span<const float> bias,
                  const ConvSpec& spec) {
  spec.validate();
  if (f.c() != spec.in_channels) {
    throw ShapeError("conv: input has " + std::to_string(f.c()) + " channels, spec expects " +
                     std::to_string(spec.in_channels));
  }
  if (weight.shape() != spec.weight_shape()) {
    throw ShapeError("conv: weight shape " + weight.shape().str() + " does not match " +
                     spec.weight_shape().str());
  }
  if (spec.has_bias && bias.size() != spec.out_channels) {
    throw ShapeError("conv: expected " + std::to_string(spec.out_channels) + " bias values, got " +
                     std::to_string(bias.size()));
  }
  if (!spec.has_bias && !bias.empty()) {
    throw ShapeError("conv: bias given for a bias-free layer");
  }
  if (f.h() + 2 * spec.padding < spec.kh || f.w() + 2 * spec.padding < spec.kw) {
    throw ShapeError("conv: input " + f.shape().str() + " smaller than kernel");
  }
}

void check_support(const Support* support, std::size_t oh, std::size_t ow) {
  if (support && (support->h != oh || support->w != ow)) {
    throw ShapeError("conv: support " + std::to_string(support->h) + "x" + std::to_string(support->w) +
                     " does not match output " + std::to_string(oh) + "x" + std::to_string(ow));
  }
}

std::vector<Pos> retained_positions(const Support* support, std::size_t oh, std::size_t ow) {
  std::vector<Pos> pos;
  pos.reserve(support ? support_count(*support) : oh * ow);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      if (!support || (*support)(y, x)) {
        pos.push_back(Pos{static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x)});
      }
    }
  }
  return pos;
}

// Writes the receptive field of output position p into row.
void fill_row(const Tensor& f, std::size_t sample, const ConvSpec& spec, Pos p, float* row) {
  const auto h = static_cast<long>(f.h());
  const auto w = static_cast<long>(f.w());
  const long y0 = static_cast<long>(p.y * spec.stride) - static_cast<long>(spec.padding);
  const long x0 = static_cast<long>(p.x * spec.stride) - static_cast<long>(spec.padding);
  for (std::size_t ci = 0; ci < spec.in_channels; ++ci) {
    const float* plane = f.channel(sample, ci).data();
    for (std::size_t ky = 0; ky < spec.kh; ++ky) {
      const long iy = y0 + static_cast<long>(ky);
      if (iy < 0 || iy >= h) {
        std::fill_n(row, spec.kw, 0.0f);
        row += spec.kw;
        continue;
      }
      const float* src = plane + iy * w;
      for (std::size_t kx = 0; kx < spec.kw; ++kx) {
        const long ix = x0 + static_cast<long>(kx);
        *row++ = (ix < 0 || ix >= w) ? 0.0f : src[ix];
      }
    }
  }
}

// acc[r][o] = sum_k rows[r][k] * kmat[k][o], k ascending, for nr <= kRowTile rows.
void gemm_tile(const float* rows, std::size_t nr, std::size_t cols, const float* kmat,
               std::size_t co, float* acc) {
  std::fill_n(acc, nr * co, 0.0f);
  for (std::size_t ob = 0; ob < co; ob += kOutBlock) {
    const std::size_t on = std::min(kOutBlock, co - ob);
    for (std::size_t k = 0; k < cols; ++k) {
      const float* wk = kmat + k * co + ob;
      for (std::size_t r = 0; r < nr; ++r) {
        const float a = rows[r * cols + k];
        float* dst = acc + r * co + ob;
        for (std::size_t o = 0; o < on; ++o) dst[o] += a * wk[o];
      }
    }
  }
}

}  // namespace

void ConvSpec::validate() const {
  if (in_channels == 0 || out_channels == 0) throw ShapeError("conv: channel counts must be >= 1");
  if (kh == 0 || kw == 0) throw ShapeError("conv: kernel dimensions must be >= 1");
  if (stride == 0) throw ShapeError("conv: stride must be >= 1");
}

Tensor direct_conv(const Tensor& f, const Tensor& weight, std::span<const float> bias,
                   const ConvSpec& spec) {
  check_inputs(f, weight, bias, spec);
  const std::size_t oh = spec.out_h(f.h());
  const std::size_t ow = spec.out_w(f.w());
  const auto h = static_cast<long>(f.h());
  const auto w = static_cast<long>(f.w());
  Tensor out(Shape{f.n(), spec.out_channels, oh, ow});
  for (std::size_t i = 0; i < f.n(); ++i) {
    for (std::size_t o = 0; o < spec.out_channels; ++o) {
      for (std::size_t y = 0; y < oh; ++y) {
        for (std::size_t x = 0; x < ow; ++x) {
          float sum = 0.0f;
          for (std::size_t ci = 0; ci < spec.in_channels; ++ci) {
            for (std::size_t ky = 0; ky < spec.kh; ++ky) {
              const long iy = static_cast<long>(y * spec.stride + ky) - static_cast<long>(spec.padding);
              if (iy < 0 || iy >= h) continue;
              for (std::size_t kx = 0; kx < spec.kw; ++kx) {
                const long ix = static_cast<long>(x * spec.stride + kx) - static_cast<long>(spec.padding);
                if (ix < 0 || ix >= w) continue;
                sum += f.at(i, ci, static_cast<std::size_t>(iy), static_cast<std::size_t>(ix)) *
                       weight.at(o, ci, ky, kx);
              }
            }
          }
          out.at(i, o, y, x) = spec.has_bias ? sum + bias[o] : sum;
        }
      }
    }
  }
  return out;
}

LoweredMatrix im2col(const Tensor& f, const ConvSpec& spec, const Support* support, std::size_t sample) {
  spec.validate();
  if (f.c() != spec.in_channels) throw ShapeError("im2col: channel count mismatch");
  if (sample >= f.n()) throw ShapeError("im2col: sample index out of range");
  const std::size_t oh = spec.out_h(f.h());
  const std::size_t ow = spec.out_w(f.w());
  check_support(support, oh, ow);

  LoweredMatrix m;
  m.row_index = retained_positions(support, oh, ow);
  m.rows = m.row_index.size();
  m.cols = spec.cols();
  m.data.resize(m.rows * m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) {
    fill_row(f, sample, spec, m.row_index[r], m.data.data() + r * m.cols);
  }
  return m;
}

Tensor conv_lowered(const Tensor& f, const Tensor& weight, std::span<const float> bias,
                    const ConvSpec& spec, const LoweringOptions& opts) {
  check_inputs(f, weight, bias, spec);
  const std::size_t oh = spec.out_h(f.h());
  const std::size_t ow = spec.out_w(f.w());
  check_support(opts.support, oh, ow);

  const std::size_t co = spec.out_channels;
  const std::size_t cols = spec.cols();

  // Kernel matrix, cols x out_channels.
  std::vector<float> kmat(cols * co);
  const auto wdata = weight.data();
  for (std::size_t o = 0; o < co; ++o) {
    for (std::size_t k = 0; k < cols; ++k) kmat[k * co + o] = wdata[o * cols + k];
  }

  Tensor out(Shape{f.n(), co, oh, ow}, opts.fill);
  const std::vector<Pos> positions = retained_positions(opts.support, oh, ow);
  const std::size_t plane = oh * ow;

  for (std::size_t i = 0; i < f.n(); ++i) {
    float* dst = out.data().data() + i * co * plane;
    parallel_chunks(positions.size(), kRowsPerTask, [&](std::size_t begin, std::size_t end) {
      std::vector<float> rows(kRowTile * cols);
      std::vector<float> acc(kRowTile * co);
      for (std::size_t r0 = begin; r0 < end; r0 += kRowTile) {
        const std::size_t nr = std::min(kRowTile, end - r0);
        for (std::size_t r = 0; r < nr; ++r) fill_row(f, i, spec, positions[r0 + r], rows.data() + r * cols);
        gemm_tile(rows.data(), nr, cols, kmat.data(), co, acc.data());
        if (opts.counter) opts.counter->add(static_cast<std::uint64_t>(nr) * cols * co);
        for (std::size_t r = 0; r < nr; ++r) {
          const Pos p = positions[r0 + r];
          const std::size_t at = p.y * ow + p.x;
          const float* a = acc.data() + r * co;
          for (std::size_t o = 0; o < co; ++o) {
            dst[o * plane + at] = spec.has_bias ? a[o] + bias[o] : a[o];
          }
        }
      }
    });
  }
  return out;
}

std::uint64_t count_macs(const ConvSpec& spec, std::uint64_t retained_positions) {
  return static_cast<std::uint64_t>(spec.out_channels) * spec.in_channels * spec.kh * spec.kw *
         retained_positions;
}

}  // namespace adasr
