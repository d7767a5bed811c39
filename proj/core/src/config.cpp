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

#include "adasr/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "adasr/error.hpp"

namespace adasr {

ModelConfig ModelConfig::edsr(int scale) {
  ModelConfig c;
  c.scale = scale;
  c.feat_channels = 256;
  c.groups = 1;
  c.blocks = 32;
  c.channel_attention = false;
  c.group_skip = false;
  c.group_tail = false;
  c.body_tail = true;
  c.res_scale = 0.1f;
  return c;
}

ModelConfig ModelConfig::rcan(int scale) {
  ModelConfig c;
  c.scale = scale;
  c.feat_channels = 64;
  c.groups = 10;
  c.blocks = 20;
  c.channel_attention = true;
  c.ca_reduction = 16;
  c.group_skip = true;
  c.group_tail = true;
  c.body_tail = true;
  c.res_scale = 1.0f;
  return c;
}

void ModelConfig::validate() const {
  if (scale != 2 && scale != 3 && scale != 4) {
    throw ConfigError("unsupported scale " + std::to_string(scale) + " (expected 2, 3 or 4)");
  }
  if (feat_channels == 0) throw ConfigError("feat_channels must be >= 1");
  if (groups == 0) throw ConfigError("groups must be >= 1");
  if (adapter_channels == 0) throw ConfigError("adapter_channels must be >= 1");
  if (channel_attention) {
    if (ca_reduction == 0 || feat_channels % ca_reduction != 0) {
      throw ConfigError("ca_reduction " + std::to_string(ca_reduction) + " must divide feat_channels " +
                        std::to_string(feat_channels));
    }
  }
  for (float m : rgb_mean) {
    if (!(m >= 0.0f && m <= 1.0f)) throw ConfigError("rgb_mean entries must lie in [0, 1]");
  }
}

std::vector<int> ModelConfig::upsample_factors() const {
  switch (scale) {
    case 2:
      return {2};
    case 3:
      return {3};
    case 4:
      return {2, 2};
    default:
      throw ConfigError("unsupported scale " + std::to_string(scale));
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, int line) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("line " + std::to_string(line) + ": bad value '" + value + "' for " + key);
  }
  return out;
}

float parse_float(const std::string& key, const std::string& value, int line) {
  std::istringstream in(value);
  float out = 0.0f;
  in >> out;
  if (!in || !(in >> std::ws).eof()) {
    throw ConfigError("line " + std::to_string(line) + ": bad value '" + value + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": bad boolean '" + value + "' for " + key);
}

}  // namespace

ModelConfig parse_config(std::string_view text) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key=value");
    std::string key = trim(std::string_view(content).substr(0, eq));
    std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key");
    if (!entries.emplace(key, Entry{value, line}).second) {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key " + key);
    }
  }

  ModelConfig cfg;
  if (auto it = entries.find("preset"); it != entries.end()) {
    const std::string& preset = it->second.value;
    if (preset == "edsr") {
      cfg = ModelConfig::edsr();
    } else if (preset == "rcan") {
      cfg = ModelConfig::rcan();
    } else if (preset != "none") {
      throw ConfigError("line " + std::to_string(it->second.line) + ": unknown preset '" + preset + "'");
    }
    entries.erase(it);
  }

  for (const auto& [key, e] : entries) {
    const std::string& v = e.value;
    if (key == "scale") {
      cfg.scale = parse_number<int>(key, v, e.line);
    } else if (key == "feat_channels") {
      cfg.feat_channels = parse_number<std::size_t>(key, v, e.line);
    } else if (key == "groups") {
      cfg.groups = parse_number<std::size_t>(key, v, e.line);
    } else if (key == "blocks") {
      cfg.blocks = parse_number<std::size_t>(key, v, e.line);
    } else if (key == "channel_attention") {
      cfg.channel_attention = parse_bool(key, v, e.line);
    } else if (key == "ca_reduction") {
      cfg.ca_reduction = parse_number<std::size_t>(key, v, e.line);
    } else if (key == "group_skip") {
      cfg.group_skip = parse_bool(key, v, e.line);
    } else if (key == "group_tail") {
      cfg.group_tail = parse_bool(key, v, e.line);
    } else if (key == "body_tail") {
      cfg.body_tail = parse_bool(key, v, e.line);
    } else if (key == "res_scale") {
      cfg.res_scale = parse_float(key, v, e.line);
    } else if (key == "adapter_channels") {
      cfg.adapter_channels = parse_number<std::size_t>(key, v, e.line);
    } else if (key == "rgb_mean") {
      std::istringstream parts(v);
      std::string part;
      std::size_t i = 0;
      while (std::getline(parts, part, ',')) {
        if (i >= 3) throw ConfigError("line " + std::to_string(e.line) + ": rgb_mean needs 3 values");
        cfg.rgb_mean[i++] = parse_float(key, trim(part), e.line);
      }
      if (i != 3) throw ConfigError("line " + std::to_string(e.line) + ": rgb_mean needs 3 values");
    } else {
      throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const ModelConfig& cfg) {
  std::ostringstream out;
  out << "preset=none\n"
      << "scale=" << cfg.scale << "\n"
      << "feat_channels=" << cfg.feat_channels << "\n"
      << "groups=" << cfg.groups << "\n"
      << "blocks=" << cfg.blocks << "\n"
      << "channel_attention=" << (cfg.channel_attention ? 1 : 0) << "\n"
      << "ca_reduction=" << cfg.ca_reduction << "\n"
      << "group_skip=" << (cfg.group_skip ? 1 : 0) << "\n"
      << "group_tail=" << (cfg.group_tail ? 1 : 0) << "\n"
      << "body_tail=" << (cfg.body_tail ? 1 : 0) << "\n"
      << "res_scale=" << cfg.res_scale << "\n"
      << "rgb_mean=" << cfg.rgb_mean[0] << "," << cfg.rgb_mean[1] << "," << cfg.rgb_mean[2] << "\n"
      << "adapter_channels=" << cfg.adapter_channels << "\n";
  return out.str();
}

}  // namespace adasr
