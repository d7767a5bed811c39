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

#include "adasr/gating.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adasr/error.hpp"

namespace adasr {

std::string_view to_string(ExecMode mode) {
  switch (mode) {
    case ExecMode::kDense:
      return "dense";
    case ExecMode::kSparseExact:
      return "sparse-exact";
    case ExecMode::kSparseFast:
      return "sparse-fast";
  }
  return "?";
}

ExecMode parse_exec_mode(std::string_view text) {
  if (text == "dense") return ExecMode::kDense;
  if (text == "sparse-exact") return ExecMode::kSparseExact;
  if (text == "sparse-fast") return ExecMode::kSparseFast;
  throw ConfigError("unknown execution mode '" + std::string(text) + "'");
}

std::string_view to_string(CaPool pool) { return pool == CaPool::kFull ? "full" : "support"; }

CaPool parse_ca_pool(std::string_view text) {
  if (text == "full") return CaPool::kFull;
  if (text == "support") return CaPool::kSupport;
  throw ConfigError("unknown channel-attention pooling '" + std::string(text) + "'");
}

DepthMap::DepthMap(std::size_t groups, std::size_t h, std::size_t w, float fill)
    : DepthMap(groups, h, w, std::vector<float>(groups * h * w, fill)) {}

DepthMap::DepthMap(std::size_t groups, std::size_t h, std::size_t w, std::vector<float> values)
    : groups_(groups), h_(h), w_(w), values_(std::move(values)) {
  if (groups == 0 || h == 0 || w == 0) throw ShapeError("depth map dimensions must be >= 1");
  if (values_.size() != groups * h * w) throw ShapeError("depth map value count does not match its shape");
}

Plane DepthMap::channel(std::size_t g) const {
  if (g >= groups_) throw ShapeError("depth map has no group " + std::to_string(g));
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(g * h_ * w_);
  return Plane(h_, w_, std::vector<float>(first, first + static_cast<std::ptrdiff_t>(h_ * w_)));
}

double gate_coefficient(double depth, int l) {
  const double lower = static_cast<double>(l - 1);
  if (depth < lower) return 0.0;
  if (depth > static_cast<double>(l)) return 1.0;
  return depth - lower;
}

BlockMask block_mask(const Plane& depth, int l) {
  BlockMask m{Plane(depth.h, depth.w), Support(depth.h, depth.w)};
  for (std::size_t p = 0; p < depth.size(); ++p) {
    const auto g = static_cast<float>(gate_coefficient(depth.values[p], l));
    m.coefficients.values[p] = g;
    m.support.values[p] = g > 0.0f ? 1 : 0;
  }
  return m;
}

std::vector<BlockMask> masks_from_depth(const Plane& depth, int blocks) {
  if (blocks < 0) throw RangeError("block count must be non-negative");
  for (float v : depth.values) {
    if (!(v >= 0.0f && v <= static_cast<float>(blocks))) {
      throw RangeError("depth value " + std::to_string(v) + " outside [0, " + std::to_string(blocks) + "]");
    }
  }
  std::vector<BlockMask> masks;
  masks.reserve(static_cast<std::size_t>(blocks));
  for (int l = 1; l <= blocks; ++l) masks.push_back(block_mask(depth, l));
  return masks;
}

Support dilate_support(const Support& support, std::size_t radius) {
  if (radius == 0) return support;
  const std::size_t h = support.h;
  const std::size_t w = support.w;
  // Separable: a Chebyshev ball is a square, so dilate rows then columns.
  Support rows(h, w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (!support(y, x)) continue;
      const std::size_t lo = x >= radius ? x - radius : 0;
      const std::size_t hi = std::min(w - 1, x + radius);
      for (std::size_t k = lo; k <= hi; ++k) rows(y, k) = 1;
    }
  }
  Support out(h, w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (!rows(y, x)) continue;
      const std::size_t lo = y >= radius ? y - radius : 0;
      const std::size_t hi = std::min(h - 1, y + radius);
      for (std::size_t k = lo; k <= hi; ++k) out(k, x) = 1;
    }
  }
  return out;
}

namespace {

// out = z + m * (res_scale * u) at every position (support == null) or at set positions only.
Tensor gated_sum(const Tensor& z, const Tensor& u, const Plane& m, float res_scale, const Support* support) {
  Tensor out = z;
  for (std::size_t i = 0; i < z.n(); ++i) {
    for (std::size_t j = 0; j < z.c(); ++j) {
      auto dst = out.channel(i, j);
      auto src = u.channel(i, j);
      for (std::size_t p = 0; p < dst.size(); ++p) {
        if (support && !support->values[p]) continue;
        dst[p] = dst[p] + m.values[p] * (res_scale * src[p]);
      }
    }
  }
  return out;
}

Support full_support(std::size_t h, std::size_t w) { return Support(h, w, 1); }

}  // namespace

Tensor gated_residual_block(const Tensor& z, const ResidualBlockParams& block, const BlockMask& mask,
                            const BlockOptions& opts, BlockStats* stats) {
  if (mask.coefficients.h != z.h() || mask.coefficients.w != z.w() || mask.support.h != z.h() ||
      mask.support.w != z.w()) {
    throw ShapeError("block mask " + std::to_string(mask.coefficients.h) + "x" +
                     std::to_string(mask.coefficients.w) + " does not match features " + z.shape().str());
  }
  if (block.conv1.spec.in_channels != z.c() || block.conv2.spec.out_channels != z.c()) {
    throw ParameterError("residual block channels do not match features " + z.shape().str());
  }

  MacCounter c1;
  MacCounter c2;
  MacCounter cca;
  auto finish = [&](Tensor out) {
    if (stats) *stats = BlockStats{c1.value(), c2.value(), cca.value()};
    return out;
  };

  if (opts.mode == ExecMode::kDense) {
    LoweringOptions o1;
    o1.counter = &c1;
    Tensor t = block.conv1(z, o1);
    relu_inplace(t);
    LoweringOptions o2;
    o2.counter = &c2;
    Tensor u = block.conv2(t, o2);
    if (block.ca) u = channel_attention_apply(u, *block.ca, opts.ca_pool, &mask.support, &cca);
    return finish(gated_sum(z, u, mask.coefficients, opts.res_scale, nullptr));
  }

  if (support_count(mask.support) == 0) return finish(z);

  // Exact channel attention over all positions needs conv2 everywhere, hence conv1 everywhere.
  const bool needs_everything = block.ca && opts.ca_pool == CaPool::kFull && opts.mode == ExecMode::kSparseExact;
  Support outer = needs_everything ? full_support(z.h(), z.w()) : mask.support;
  Support inner = outer;
  if (opts.mode == ExecMode::kSparseExact && !needs_everything) {
    const std::size_t radius = std::max(block.conv2.spec.kh, block.conv2.spec.kw) / 2;
    inner = dilate_support(outer, radius);
  }

  LoweringOptions o1;
  o1.support = &inner;
  o1.counter = &c1;
  Tensor t = block.conv1(z, o1);
  relu_inplace(t);
  LoweringOptions o2;
  o2.support = &outer;
  o2.counter = &c2;
  Tensor u = block.conv2(t, o2);
  if (block.ca) u = channel_attention_apply(u, *block.ca, opts.ca_pool, &mask.support, &cca);
  return finish(gated_sum(z, u, mask.coefficients, opts.res_scale, &mask.support));
}

TrunkResult trunk_forward(const Tensor& z0, const TrunkParams& trunk, const DepthMap& depth,
                          const TrunkOptions& opts, EfficiencyReport* report) {
  if (depth.groups() != trunk.groups.size()) {
    throw ParameterError("depth map has " + std::to_string(depth.groups()) + " groups, trunk has " +
                         std::to_string(trunk.groups.size()));
  }
  if (depth.h() != z0.h() || depth.w() != z0.w()) {
    throw ShapeError("depth map size does not match trunk input " + z0.shape().str());
  }
  const std::uint64_t positions = z0.h() * z0.w();

  TrunkResult result{z0, {}};
  Tensor& z = result.z_out;
  for (std::size_t g = 0; g < trunk.groups.size(); ++g) {
    const ResidualGroupParams& group = trunk.groups[g];
    const int blocks = static_cast<int>(group.blocks.size());
    Plane channel = depth.channel(g);
    for (float& v : channel.values) v = std::clamp(v, 0.0f, static_cast<float>(blocks));
    const std::vector<BlockMask> masks = masks_from_depth(channel, blocks);

    const Tensor group_in = z;
    for (int b = 0; b < blocks; ++b) {
      const ResidualBlockParams& block = group.blocks[static_cast<std::size_t>(b)];
      BlockStats stats;
      z = gated_residual_block(z, block, masks[static_cast<std::size_t>(b)],
                               BlockOptions{opts.mode, opts.ca_pool, trunk.res_scale}, &stats);
      result.block_support.push_back(support_count(masks[static_cast<std::size_t>(b)].support));
      if (report) {
        const std::string name = "body.g" + std::to_string(g) + ".b" + std::to_string(b);
        report->add(name + ".conv1", count_macs(block.conv1.spec, positions), stats.conv1_macs, true);
        report->add(name + ".conv2", count_macs(block.conv2.spec, positions), stats.conv2_macs, true);
        if (block.ca) {
          report->add(name + ".ca", count_macs(block.ca->reduce.spec, 1) + count_macs(block.ca->expand.spec, 1),
                      stats.ca_macs, true);
        }
      }
    }
    if (group.tail) {
      MacCounter counter;
      LoweringOptions o;
      o.counter = &counter;
      z = (*group.tail)(z, o);
      if (report) {
        report->add("body.g" + std::to_string(g) + ".tail", count_macs(group.tail->spec, positions),
                    counter.value());
      }
    }
    if (trunk.group_skip) {
      auto dst = z.data();
      auto src = group_in.data();
      for (std::size_t p = 0; p < dst.size(); ++p) dst[p] = src[p] + dst[p];
    }
  }
  if (trunk.tail) {
    MacCounter counter;
    LoweringOptions o;
    o.counter = &counter;
    z = (*trunk.tail)(z, o);
    if (report) report->add("body.tail", count_macs(trunk.tail->spec, positions), counter.value());
  }
  if (trunk.long_skip) {
    auto dst = z.data();
    auto src = z0.data();
    for (std::size_t p = 0; p < dst.size(); ++p) dst[p] = src[p] + dst[p];
  }
  return result;
}

}  // namespace adasr
