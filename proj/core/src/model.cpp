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

#include "adasr/model.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <random>
#include <unordered_set>

#include "adasr/error.hpp"

namespace adasr {

namespace {

std::vector<std::uint32_t> conv_dims(const ConvSpec& s) {
  return {static_cast<std::uint32_t>(s.out_channels), static_cast<std::uint32_t>(s.in_channels),
          static_cast<std::uint32_t>(s.kh), static_cast<std::uint32_t>(s.kw)};
}

void add_conv(std::vector<ParamInfo>& out, const std::string& prefix, const ConvSpec& s) {
  out.push_back({prefix + ".weight", conv_dims(s)});
  out.push_back({prefix + ".bias", {static_cast<std::uint32_t>(s.out_channels)}});
}

std::string block_prefix(std::size_t g, std::size_t b) {
  return "body.g" + std::to_string(g) + ".b" + std::to_string(b);
}

std::array<ConvSpec, 5> adapter_specs(const ModelConfig& cfg) {
  const std::size_t a = cfg.adapter_channels;
  return {ConvSpec::same(cfg.feat_channels, a), ConvSpec::same(a, a), ConvSpec::same(a, a), ConvSpec::same(a, a),
          ConvSpec::same(a, cfg.groups)};
}

ConvParams conv_from_store(const WeightStore& store, const std::string& prefix, const ConvSpec& spec) {
  const NamedTensor& w = store.at(prefix + ".weight");
  const NamedTensor& b = store.at(prefix + ".bias");
  return ConvParams(spec, Tensor(spec.weight_shape(), w.values), b.values);
}

}  // namespace

std::vector<ParamInfo> parameter_layout(const ModelConfig& cfg) {
  cfg.validate();
  const std::size_t c = cfg.feat_channels;
  std::vector<ParamInfo> out;
  add_conv(out, "head", ConvSpec::same(3, c));

  const auto adapter = adapter_specs(cfg);
  for (std::size_t i = 0; i < adapter.size(); ++i) add_conv(out, "adapter.conv" + std::to_string(i + 1), adapter[i]);
  for (std::size_t i = 0; i < 4; ++i) {
    out.push_back({"adapter.prelu" + std::to_string(i + 1) + ".slopes", {static_cast<std::uint32_t>(cfg.adapter_channels)}});
  }

  for (std::size_t g = 0; g < cfg.groups; ++g) {
    for (std::size_t b = 0; b < cfg.blocks; ++b) {
      const std::string p = block_prefix(g, b);
      add_conv(out, p + ".conv1", ConvSpec::same(c, c));
      add_conv(out, p + ".conv2", ConvSpec::same(c, c));
      if (cfg.channel_attention) {
        const std::size_t r = c / cfg.ca_reduction;
        add_conv(out, p + ".ca.reduce", ConvSpec::same(c, r, 1));
        add_conv(out, p + ".ca.expand", ConvSpec::same(r, c, 1));
      }
    }
    if (cfg.group_tail) add_conv(out, "body.g" + std::to_string(g) + ".tail", ConvSpec::same(c, c));
  }
  if (cfg.body_tail) add_conv(out, "body.tail", ConvSpec::same(c, c));

  const auto factors = cfg.upsample_factors();
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto r = static_cast<std::size_t>(factors[k]);
    add_conv(out, "tail.up" + std::to_string(k) + ".conv", ConvSpec::same(c, c * r * r));
  }
  add_conv(out, "tail.out", ConvSpec::same(c, 3));
  return out;
}

void validate_weights(const ModelConfig& cfg, const WeightStore& store) {
  const auto layout = parameter_layout(cfg);
  std::unordered_set<std::string> required;
  for (const ParamInfo& p : layout) {
    required.insert(p.name);
    const NamedTensor* t = store.find(p.name);
    if (!t) throw ParameterError("weight file is missing " + p.name);
    if (t->dims != p.dims) {
      auto fmt = [](const std::vector<std::uint32_t>& d) {
        std::string s = "[";
        for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
        return s + "]";
      };
      throw ParameterError(p.name + " has dims " + fmt(t->dims) + ", config needs " + fmt(p.dims));
    }
  }
  for (const NamedTensor& t : store) {
    if (!required.count(t.name)) throw ParameterError("weight file has unexpected tensor " + t.name);
  }
}

WeightStore random_weights(const ModelConfig& cfg, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed ^ (seed >> 32)));
  // 24 random bits -> [0, 1); keeps the stream identical across standard libraries.
  auto uniform = [&rng]() { return static_cast<float>(rng() >> 8) * (1.0f / 16777216.0f); };

  WeightStore store;
  for (const ParamInfo& p : parameter_layout(cfg)) {
    std::size_t n = 1;
    for (auto d : p.dims) n *= d;
    std::vector<float> values(n, 0.0f);
    if (p.name.ends_with(".weight")) {
      for (float& v : values) v = -0.05f + 0.1f * uniform();
    } else if (p.name.ends_with(".slopes")) {
      std::fill(values.begin(), values.end(), 0.25f);
    }
    store.insert(p.name, p.dims, std::move(values));
  }
  return store;
}

Model::Model(ModelConfig cfg, const WeightStore& weights) : cfg_(std::move(cfg)) {
  validate_weights(cfg_, weights);
  const std::size_t c = cfg_.feat_channels;
  head_ = conv_from_store(weights, "head", ConvSpec::same(3, c));

  const auto aspecs = adapter_specs(cfg_);
  for (std::size_t i = 0; i < aspecs.size(); ++i) {
    adapter_.convs[i] = conv_from_store(weights, "adapter.conv" + std::to_string(i + 1), aspecs[i]);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    adapter_.slopes[i] = weights.at("adapter.prelu" + std::to_string(i + 1) + ".slopes").values;
  }
  adapter_.validate(c, cfg_.groups);

  trunk_.group_skip = cfg_.group_skip;
  trunk_.long_skip = true;
  trunk_.res_scale = cfg_.res_scale;
  for (std::size_t g = 0; g < cfg_.groups; ++g) {
    ResidualGroupParams group;
    for (std::size_t b = 0; b < cfg_.blocks; ++b) {
      const std::string p = block_prefix(g, b);
      ResidualBlockParams block;
      block.conv1 = conv_from_store(weights, p + ".conv1", ConvSpec::same(c, c));
      block.conv2 = conv_from_store(weights, p + ".conv2", ConvSpec::same(c, c));
      if (cfg_.channel_attention) {
        const std::size_t r = c / cfg_.ca_reduction;
        block.ca = ChannelAttentionParams{conv_from_store(weights, p + ".ca.reduce", ConvSpec::same(c, r, 1)),
                                          conv_from_store(weights, p + ".ca.expand", ConvSpec::same(r, c, 1))};
      }
      group.blocks.push_back(std::move(block));
    }
    if (cfg_.group_tail) group.tail = conv_from_store(weights, "body.g" + std::to_string(g) + ".tail", ConvSpec::same(c, c));
    trunk_.groups.push_back(std::move(group));
  }
  if (cfg_.body_tail) trunk_.tail = conv_from_store(weights, "body.tail", ConvSpec::same(c, c));

  const auto factors = cfg_.upsample_factors();
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto r = static_cast<std::size_t>(factors[k]);
    upsampler_.push_back(conv_from_store(weights, "tail.up" + std::to_string(k) + ".conv", ConvSpec::same(c, c * r * r)));
  }
  output_ = conv_from_store(weights, "tail.out", ConvSpec::same(c, 3));
}

ForwardResult Model::forward(const Tensor& x, double desired_depth, const ForwardOptions& opts) const {
  if (x.n() != 1 || x.c() != 3) throw ShapeError("forward expects a (1,3,h,w) image, got " + x.shape().str());
  const auto start = std::chrono::steady_clock::now();
  EfficiencyReport report;

  Tensor shifted = x;
  for (std::size_t j = 0; j < 3; ++j) {
    for (float& v : shifted.channel(0, j)) v -= cfg_.rgb_mean[j];
  }

  auto run_conv = [&report](const ConvParams& conv, const Tensor& in, const std::string& name) {
    MacCounter counter;
    LoweringOptions o;
    o.counter = &counter;
    Tensor out = conv(in, o);
    report.add(name, count_macs(conv.spec, in.h() * in.w()), counter.value());
    return out;
  };

  const Tensor z0 = run_conv(head_, shifted, "head");

  DepthMap depth = [&]() {
    if (opts.depth_override) {
      const DepthMap& d = *opts.depth_override;
      if (d.groups() != cfg_.groups || d.h() != z0.h() || d.w() != z0.w()) {
        throw ShapeError("depth override does not match " + std::to_string(cfg_.groups) + "x" +
                         std::to_string(z0.h()) + "x" + std::to_string(z0.w()));
      }
      return d;
    }
    return adapter_forward(z0, desired_depth, adapter_, static_cast<int>(cfg_.blocks), cfg_.groups, &report);
  }();
  report.average_depth = average_depth(depth);

  TrunkResult trunk = trunk_forward(z0, trunk_, depth, TrunkOptions{opts.mode, opts.ca_pool}, &report);

  Tensor feat = std::move(trunk.z_out);
  const auto factors = cfg_.upsample_factors();
  for (std::size_t k = 0; k < upsampler_.size(); ++k) {
    feat = pixel_shuffle(run_conv(upsampler_[k], feat, "tail.up" + std::to_string(k) + ".conv"),
                         static_cast<std::size_t>(factors[k]));
  }
  Tensor image = run_conv(output_, feat, "tail.out");
  for (std::size_t j = 0; j < 3; ++j) {
    for (float& v : image.channel(0, j)) v += cfg_.rgb_mean[j];
  }

  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return ForwardResult{std::move(image), std::move(depth), std::move(report)};
}

}  // namespace adasr
