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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adasr/config.hpp"
#include "adasr/error.hpp"
#include "adasr/metrics.hpp"
#include "adasr/model.hpp"
#include "adasr/netpbm.hpp"
#include "adasr/resize.hpp"
#include "adasr/weights.hpp"

namespace adasr::cli {
namespace fs = std::filesystem;

namespace {

struct InferArgs {
  std::string weights;
  std::string config;
  std::string input;
  std::string output;
  double depth = 0.0;
  std::string mode = "sparse-exact";
  std::string ca_pool = "full";
  std::string emit_depth;
  std::string report;
};

struct BenchArgs {
  std::string config;
  std::string size = "32x32";
  std::vector<double> depths;
  std::string mode = "sparse-exact";
  std::string ca_pool = "full";
  std::string depth_source = "uniform";
  int repeat = 3;
  std::string csv;
  std::uint64_t seed = 0;
};

struct EvalArgs {
  std::string sr_dir;
  std::string hr_dir;
  int scale = 2;
  std::vector<std::string> metrics{"psnr", "ssim"};
};

struct ResampleArgs {
  std::string input;
  std::string output;
  int scale = 2;
};

struct GenArgs {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

std::string format_metric(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(4);
  s << v;
  return s.str();
}

int cmd_infer(const InferArgs& a, std::ostream& out) {
  if (a.depth < 0.0) throw RangeError("--depth must be >= 0");
  const ModelConfig cfg = load_config(a.config);
  const WeightStore store = load_weights(a.weights);
  const Model model(cfg, store);
  const Tensor x = read_image(a.input);

  ForwardOptions opts;
  opts.mode = parse_exec_mode(a.mode);
  opts.ca_pool = parse_ca_pool(a.ca_pool);
  const ForwardResult r = model.forward(x, a.depth, opts);

  write_image(r.image, a.output);
  if (!a.emit_depth.empty()) {
    write_map(mean_over_groups(r.depth), static_cast<double>(cfg.blocks), a.emit_depth);
  }
  if (!a.report.empty()) {
    write_text(a.report, report_json(a.input, cfg.scale, a.depth, a.mode, a.ca_pool, r.report));
  }
  out << "wrote " << a.output << " (" << r.image.w() << "x" << r.image.h() << "), average depth "
      << r.report.average_depth << ", " << r.report.total_flops() << " FLOPs, " << r.report.wall_ms << " ms\n";
  return kOk;
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    const long h = std::stol(s.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(s);
    const long w = std::stol(s.substr(x + 1), &used);
    if (used != s.size() - x - 1) throw std::invalid_argument(s);
    if (h <= 0 || w <= 0) throw std::invalid_argument(s);
    return {static_cast<std::size_t>(h), static_cast<std::size_t>(w)};
  } catch (const std::logic_error&) {
    throw ConfigError("--size expects HxW with positive integers, got '" + s + "'");
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const ModelConfig cfg = load_config(a.config);
  const auto [h, w] = parse_size(a.size);
  const ExecMode mode = parse_exec_mode(a.mode);
  const CaPool pool = parse_ca_pool(a.ca_pool);
  if (a.depth_source != "uniform" && a.depth_source != "adapter") {
    throw ConfigError("--depth-source must be uniform or adapter");
  }
  if (a.repeat < 1) throw ConfigError("--repeat must be >= 1");
  const Model model(cfg, random_weights(cfg, a.seed));

  Tensor x(Shape{1, 3, h, w});
  std::mt19937 rng(static_cast<std::uint32_t>(a.seed));
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  for (float& v : x.data()) v = dist(rng);

  std::ostringstream csv;
  csv << "depth,mode,total_flops,trunk_flops,median_wall_ms\n";
  for (double d : a.depths) {
    if (!(d >= 0.0)) throw RangeError("bench depths must be >= 0");
    ForwardOptions opts;
    opts.mode = mode;
    opts.ca_pool = pool;
    if (a.depth_source == "uniform") {
      if (d > static_cast<double>(cfg.blocks)) throw RangeError("uniform depth exceeds block count");
      opts.depth_override = DepthMap(cfg.groups, h, w, static_cast<float>(d));
    }
    std::vector<double> times;
    std::uint64_t flops = 0;
    std::uint64_t trunk = 0;
    for (int i = 0; i < a.repeat; ++i) {
      const ForwardResult r = model.forward(x, d, opts);
      times.push_back(r.report.wall_ms);
      flops = r.report.total_flops();
      trunk = 2 * r.report.gated_retained_macs();
    }
    if (times.size() > 2) times.erase(times.begin());
    csv << d << "," << a.mode << "," << flops << "," << trunk << "," << median(times) << "\n";
  }
  if (a.csv.empty()) {
    out << csv.str();
  } else {
    write_text(a.csv, csv.str());
    out << "wrote " << a.csv << "\n";
  }
  return kOk;
}

std::vector<fs::path> list_images(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  bool want_psnr = false;
  bool want_ssim = false;
  for (const auto& m : a.metrics) {
    if (m == "psnr") {
      want_psnr = true;
    } else if (m == "ssim") {
      want_ssim = true;
    } else {
      throw ConfigError("unknown metric '" + m + "'");
    }
  }
  if (a.scale < 1) throw ConfigError("--scale must be >= 1");
  const auto border = static_cast<std::size_t>(a.scale);
  const auto files = list_images(a.sr_dir);
  if (files.empty()) throw IoError("no .ppm images in " + a.sr_dir);

  double psnr_sum = 0.0;
  double ssim_sum = 0.0;
  int evaluated = 0;
  int failed = 0;
  for (const auto& sr_path : files) {
    const std::string name = sr_path.filename().string();
    try {
      const fs::path hr_path = fs::path(a.hr_dir) / name;
      const Tensor sr = read_image(sr_path);
      const Tensor hr = read_image(hr_path);
      if (sr.shape() != hr.shape()) {
        throw ShapeError("size mismatch " + sr.shape().str() + " vs " + hr.shape().str());
      }
      const Tensor ys = rgb_to_y(sr);
      const Tensor yh = rgb_to_y(hr);
      out << name;
      if (want_psnr) {
        const double p = psnr(ys, yh, border);
        psnr_sum += p;
        out << " psnr=" << format_metric(p);
      }
      if (want_ssim) {
        const double s = ssim(ys, yh, border);
        ssim_sum += s;
        out << " ssim=" << format_metric(s);
      }
      out << "\n";
      ++evaluated;
    } catch (const Error& e) {
      err << name << ": " << e.what() << "\n";
      ++failed;
    }
  }
  if (evaluated > 0) {
    out << "mean";
    if (want_psnr) out << " psnr=" << format_metric(psnr_sum / evaluated);
    if (want_ssim) out << " ssim=" << format_metric(ssim_sum / evaluated);
    out << " (" << evaluated << " images)\n";
  }
  return failed == 0 ? kOk : kValidation;
}

int cmd_degrade(const ResampleArgs& a, std::ostream& out) {
  if (a.scale < 1) throw ConfigError("--scale must be >= 1");
  const Tensor lr = degrade(read_image(a.input), a.scale);
  write_image(lr, a.output);
  out << "wrote " << a.output << " (" << lr.w() << "x" << lr.h() << ")\n";
  return kOk;
}

int cmd_upscale(const ResampleArgs& a, std::ostream& out) {
  if (a.scale < 1) throw ConfigError("--scale must be >= 1");
  const Tensor sr = bicubic_resize(read_image(a.input), static_cast<double>(a.scale));
  write_image(sr, a.output);
  out << "wrote " << a.output << " (" << sr.w() << "x" << sr.h() << ")\n";
  return kOk;
}

int cmd_gen_weights(const GenArgs& a, std::ostream& out) {
  const ModelConfig cfg = load_config(a.config);
  const WeightStore store = random_weights(cfg, a.seed);
  save_weights(store, a.out);
  out << "wrote " << store.size() << " tensors to " << a.out << "\n";
  return kOk;
}

}  // namespace

std::string report_json(const std::string& input, int scale, double desired_depth, const std::string& mode,
                        const std::string& ca_pool, const EfficiencyReport& report) {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["scale"] = scale;
  j["desired_depth"] = desired_depth;
  j["mode"] = mode;
  j["ca_pool"] = ca_pool;
  j["average_depth"] = report.average_depth;
  j["layers"] = nlohmann::ordered_json::array();
  for (const auto& l : report.layers) {
    j["layers"].push_back({{"name", l.name}, {"dense_macs", l.dense_macs}, {"retained_macs", l.retained_macs}});
  }
  j["total_flops"] = report.total_flops();
  j["dense_flops"] = report.dense_flops();
  j["wall_ms"] = report.wall_ms;
  return j.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Depth-adaptive super-resolution inference"};
  app.name("adasr");
  app.require_subcommand(1);

  InferArgs infer;
  auto* ic = app.add_subcommand("infer", "Super-resolve one PPM image");
  ic->add_option("--weights", infer.weights, "Weight file")->required();
  ic->add_option("--config", infer.config, "Model config file")->required();
  ic->add_option("--input", infer.input, "Low-resolution PPM")->required();
  ic->add_option("--output", infer.output, "Output PPM")->required();
  ic->add_option("--depth", infer.depth, "Desired average depth")->required();
  ic->add_option("--mode", infer.mode, "dense, sparse-exact or sparse-fast")->capture_default_str();
  ic->add_option("--ca-pool", infer.ca_pool, "Channel-attention pooling: full or support")->capture_default_str();
  ic->add_option("--emit-depth", infer.emit_depth, "Write the depth map as PGM");
  ic->add_option("--report", infer.report, "Write a JSON run report");

  BenchArgs bench;
  auto* bc = app.add_subcommand("bench", "FLOPs and timing over a range of depths");
  bc->add_option("--config", bench.config, "Model config file")->required();
  bc->add_option("--size", bench.size, "Input size HxW")->capture_default_str();
  bc->add_option("--depths", bench.depths, "Comma-separated depths")->required()->delimiter(',');
  bc->add_option("--mode", bench.mode)->capture_default_str();
  bc->add_option("--ca-pool", bench.ca_pool)->capture_default_str();
  bc->add_option("--depth-source", bench.depth_source, "uniform (depth map fixed to d) or adapter")
      ->capture_default_str();
  bc->add_option("--repeat", bench.repeat)->capture_default_str();
  bc->add_option("--csv", bench.csv, "Write CSV here instead of stdout");
  bc->add_option("--seed", bench.seed)->capture_default_str();

  EvalArgs eval;
  auto* ec = app.add_subcommand("eval", "Y-channel PSNR/SSIM of SR images against HR images");
  ec->add_option("--sr-dir", eval.sr_dir)->required();
  ec->add_option("--hr-dir", eval.hr_dir)->required();
  ec->add_option("--scale", eval.scale, "Also the border width ignored")->capture_default_str();
  ec->add_option("--metrics", eval.metrics)->delimiter(',')->capture_default_str();

  ResampleArgs down;
  auto* dc = app.add_subcommand("degrade", "Antialiased bicubic downscale by 1/scale");
  dc->add_option("--input", down.input)->required();
  dc->add_option("--scale", down.scale)->required();
  dc->add_option("--output", down.output)->required();

  ResampleArgs up;
  auto* uc = app.add_subcommand("upscale", "Bicubic upscale");
  uc->add_option("--input", up.input)->required();
  uc->add_option("--scale", up.scale)->required();
  uc->add_option("--output", up.output)->required();

  GenArgs gen;
  auto* gc = app.add_subcommand("gen-weights", "Write seeded random weights for a config");
  gc->add_option("--config", gen.config)->required();
  gc->add_option("--seed", gen.seed)->capture_default_str();
  gc->add_option("--out", gen.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*ic) return cmd_infer(infer, out);
    if (*bc) return cmd_bench(bench, out);
    if (*ec) return cmd_eval(eval, out, err);
    if (*dc) return cmd_degrade(down, out);
    if (*uc) return cmd_upscale(up, out);
    if (*gc) return cmd_gen_weights(gen, out);
  } catch (const IoError& e) {
    err << "adasr: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "adasr: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

}  // namespace adasr::cli
