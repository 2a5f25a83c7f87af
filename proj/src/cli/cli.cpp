// Copyright 2026 The survx Authors. All Rights Reserved.
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

#include "survx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "survx/codec.hpp"
#include "survx/eval/csv.hpp"
#include "survx/eval/latency.hpp"
#include "survx/eval/report.hpp"
#include "survx/iqa/deep.hpp"
#include "survx/iqa/features.hpp"
#include "survx/iqa/fid.hpp"
#include "survx/iqa/pixel.hpp"
#include "survx/iqa/ssim.hpp"
#include "survx/nn/init.hpp"
#include "survx/resample.hpp"
#include "survx/serve/mos_server.hpp"
#include "survx/sr/patches.hpp"
#include "survx/sr/trainer.hpp"
#include "survx/sr/upscale.hpp"

namespace survx::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kImageMetrics = {"mse", "psnr", "ssim", "lpips", "dists"};

class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw RuntimeFailure("cannot write " + path.string());
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool is_image_path(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".png" || ext == ".ppm" || ext == ".pgm" || ext == ".pnm";
}

std::vector<fs::path> list_images(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_path(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Expands directories into their image files, in name order.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      const auto listed = list_images(in);
      files.insert(files.end(), listed.begin(), listed.end());
    } else {
      files.emplace_back(in);
    }
  }
  return files;
}

iqa::FeatureExtractor make_extractor(const std::string& stem, std::uint64_t seed) {
  if (!stem.empty()) return iqa::load_extractor(stem);
  return iqa::random_extractor(seed);
}

// degrade

struct DegradeArgs {
  std::string in;
  std::string out;
  int factor = 4;
  bool crop = false;
};

void add_degrade(CLI::App& app, DegradeArgs& a, std::function<void()>& action) {
  auto* sub = app.add_subcommand("degrade", "Bicubic antialiased downscale by an integer factor");
  sub->add_option("--in", a.in, "Input image")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", a.out, "Output image (.png or .ppm/.pgm)")->required();
  sub->add_option("--factor", a.factor, "Reduction factor")->check(CLI::Range(1, 64));
  sub->add_flag("--crop", a.crop, "Crop to a multiple of the factor instead of failing");
  sub->callback([&] {
    action = [&] {
      auto img = read_image(a.in);
      if (a.crop) img = crop_to_multiple(img, a.factor);
      write_image(a.out, degrade(img, a.factor));
    };
  });
}

// train-espcn

struct TrainArgs {
  std::vector<std::string> images;
  std::vector<std::string> validation;
  std::string out;
  std::string log;
  int factor = 4;
  std::string mode = "luma";
  std::string activation = "tanh";
  std::string optimizer = "sgd";
  sr::TrainConfig cfg;
  int max_patches = 0;
};

std::vector<sr::PatchPair> patches_from(const std::vector<fs::path>& files, const sr::EspcnConfig& ec,
                                        int max_patches) {
  std::vector<sr::PatchPair> patches;
  for (const auto& f : files) {
    auto img = read_image(f);
    img = ec.input_mode == sr::InputMode::kLuma ? to_luma(img) : img;
    auto p = sr::extract_training_patches(img, ec.r, sr::kEspcnKernels);
    patches.insert(patches.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  if (max_patches > 0 && static_cast<int>(patches.size()) > max_patches) patches.resize(max_patches);
  return patches;
}

void add_train(CLI::App& app, TrainArgs& a, std::ostream& err, std::function<void()>& action) {
  auto* sub = app.add_subcommand("train-espcn", "Train an ESPCN bundle on high-resolution images");
  sub->add_option("--images", a.images, "Training images or directories")->required()->check(CLI::ExistingPath);
  sub->add_option("--validation", a.validation, "Validation images or directories")->check(CLI::ExistingPath);
  sub->add_option("--out", a.out, "Output bundle stem (<stem>.json + <stem>.nnwb)")->required();
  sub->add_option("--log", a.log, "Per-epoch CSV log");
  sub->add_option("--factor", a.factor, "Upscale factor")->check(CLI::Range(1, 16));
  sub->add_option("--mode", a.mode, "Input mode")->check(CLI::IsMember({"luma", "rgb"}));
  sub->add_option("--activation", a.activation, "Hidden activation")->check(CLI::IsMember({"tanh", "relu"}));
  sub->add_option("--optimizer", a.optimizer, "Optimizer")->check(CLI::IsMember({"sgd", "adam"}));
  sub->add_option("--epochs", a.cfg.max_epochs, "Maximum epochs")->check(CLI::Range(1, 1000000));
  sub->add_option("--batch", a.cfg.batch_size, "Minibatch size")->check(CLI::Range(1, 1000000));
  sub->add_option("--lr", a.cfg.lr_initial, "Initial learning rate")->check(CLI::PositiveNumber);
  sub->add_option("--lr-final", a.cfg.lr_final, "Learning-rate floor")->check(CLI::PositiveNumber);
  sub->add_option("--mu", a.cfg.improvement_threshold_mu, "Relative improvement threshold")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--patience", a.cfg.patience_epochs, "Epochs without improvement before stopping")
      ->check(CLI::Range(1, 1000000));
  sub->add_option("--seed", a.cfg.seed, "RNG seed");
  sub->add_option("--max-patches", a.max_patches, "Cap on training patches (0 = all)")->check(CLI::NonNegativeNumber);
  sub->callback([&] {
    action = [&] {
      sr::EspcnConfig ec;
      ec.r = a.factor;
      ec.input_mode = sr::input_mode_from_string(a.mode);
      ec.activation = sr::hidden_activation_from_string(a.activation);
      a.cfg.optimizer = a.optimizer == "adam" ? sr::Optimizer::kAdam : sr::Optimizer::kSgd;
      const auto spec = sr::build_espcn(ec);
      const auto patches = patches_from(expand_inputs(a.images), ec, a.max_patches);
      const auto validation = patches_from(expand_inputs(a.validation), ec, 0);
      err << "train-espcn: " << patches.size() << " training patches, " << validation.size()
          << " validation patches\n";
      std::string log = "epoch,train_loss,validation_loss,best_loss,learning_rate\n";
      const auto result = sr::train_espcn(spec, patches, a.cfg, validation, [&](const sr::EpochLog& e) {
        log += std::to_string(e.epoch) + "," + fmt(e.train_loss) + "," + fmt(e.validation_loss) + "," +
               fmt(e.best_loss) + "," + fmt(e.learning_rate) + "\n";
      });
      nn::save_bundle(a.out, {spec, result.weights});
      if (!a.log.empty()) write_text(a.log, log);
      const auto& first = result.log.front();
      const auto& last = result.log.back();
      err << "train-espcn: epochs " << last.epoch << ", loss " << fmt(first.train_loss) << " -> "
          << fmt(last.best_loss) << " (best epoch " << result.best_epoch << ")\n";
    };
  });
}

// upscale

struct UpscaleArgs {
  std::string in;
  std::string out;
  std::string method = "bicubic";
  std::string model;
  int factor = 4;
  bool degrade_first = false;
  bool no_quantize = false;
};

void add_upscale(CLI::App& app, UpscaleArgs& a, std::function<void()>& action) {
  auto* sub = app.add_subcommand("upscale", "Enlarge an image with bicubic or a network bundle");
  sub->add_option("--in", a.in, "Input image")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", a.out, "Output image")->required();
  sub->add_option("--method", a.method, "Upscaler")->check(CLI::IsMember({"bicubic", "espcn", "bundle"}));
  sub->add_option("--model", a.model, "Bundle stem for espcn/bundle");
  auto* factor_opt = sub->add_option("--factor", a.factor, "Upscale factor for bicubic; checked against bundles")
                         ->check(CLI::Range(1, 64));
  sub->add_flag("--degrade-first", a.degrade_first, "Treat the input as high resolution and degrade it first");
  sub->add_flag("--no-quantize", a.no_quantize, "Keep the degraded image unquantized (with --degrade-first)");
  sub->callback([&a, &action, factor_opt] {
    if (a.method != "bicubic" && a.model.empty()) throw CLI::RequiredError("--model");
    const bool factor_given = factor_opt->count() > 0;
    action = [&a, factor_given] {
      auto img = read_image(a.in);
      int factor = a.factor;
      std::optional<nn::ModelBundle> bundle;
      if (a.method != "bicubic") {
        bundle = nn::load_bundle(a.model);
        if (a.method == "espcn") {
          const auto it = bundle->spec.metadata.find("model");
          if (it == bundle->spec.metadata.end() || it->second != "espcn") {
            throw RuntimeFailure("bundle '" + a.model + "' is not an ESPCN model");
          }
        }
        factor = sr::bundle_upscale_factor(*bundle);
        if (factor_given && factor != a.factor) {
          throw RuntimeFailure("bundle '" + a.model + "' upscales by " + std::to_string(factor) + ", not " +
                               std::to_string(a.factor));
        }
      }
      if (a.degrade_first) {
        img = degrade(crop_to_multiple(img, factor), factor);
        if (!a.no_quantize) img = quantize_8bit(img);
      }
      write_image(a.out, bundle ? sr::upscale(img, *bundle) : upscale_bicubic(img, factor));
    };
  });
}

// score

struct ScoreArgs {
  std::string manifest;
  std::string out;
  std::string fid_out;
  std::string metrics = "mse,psnr,ssim,lpips,dists";
  std::string extractor;
  std::uint64_t seed = 0;
};

struct ManifestRow {
  fs::path reference;
  fs::path candidate;
  std::string method_id;
  std::string image_id;
  std::string reference_text;
  std::string candidate_text;
};

std::vector<ManifestRow> read_manifest(const fs::path& path) {
  const auto lines = eval::split_lines(read_text(path));
  if (lines.empty()) throw RuntimeFailure("manifest " + path.string() + " is empty");
  const auto header = eval::split_csv_line(lines.front());
  auto col = [&](const std::string& name) -> int {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const int ref = col("reference_path");
  const int cand = col("candidate_path");
  const int method = col("method_id");
  const int image = col("image_id");
  if (ref < 0 || cand < 0 || method < 0) {
    throw RuntimeFailure("manifest header needs reference_path,candidate_path,method_id");
  }
  const fs::path base = path.parent_path();
  std::vector<ManifestRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = eval::split_csv_line(lines[i]);
    if (f.size() != header.size()) {
      throw RuntimeFailure("manifest line " + std::to_string(i + 1) + ": wrong field count");
    }
    ManifestRow r;
    r.reference_text = f[static_cast<std::size_t>(ref)];
    r.candidate_text = f[static_cast<std::size_t>(cand)];
    r.reference = fs::path(r.reference_text).is_absolute() ? fs::path(r.reference_text) : base / r.reference_text;
    r.candidate = fs::path(r.candidate_text).is_absolute() ? fs::path(r.candidate_text) : base / r.candidate_text;
    r.method_id = f[static_cast<std::size_t>(method)];
    r.image_id = image >= 0 ? f[static_cast<std::size_t>(image)] : fs::path(r.reference_text).stem().string();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> parse_metric_list(const std::string& text) {
  std::vector<std::string> metrics;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item != "fid" && std::find(kImageMetrics.begin(), kImageMetrics.end(), item) == kImageMetrics.end()) {
      throw CLI::ValidationError("--metrics", "unknown metric '" + item + "'");
    }
    if (std::find(metrics.begin(), metrics.end(), item) == metrics.end()) metrics.push_back(item);
  }
  if (metrics.empty()) throw CLI::ValidationError("--metrics", "no metrics selected");
  return metrics;
}

std::string method_fid_csv(const std::map<std::string, std::pair<std::vector<std::vector<double>>,
                                                                  std::vector<std::vector<double>>>>& pools) {
  std::string out = "metric,method_id,value\n";
  for (const auto& [method, pool] : pools) {
    const double value = iqa::fid(iqa::gaussian_stats(pool.first), iqa::gaussian_stats(pool.second));
    out += eval::csv_join({"fid", method, fmt(value)}) + "\n";
  }
  return out;
}

void add_score(CLI::App& app, ScoreArgs& a, std::ostream& out, std::ostream& err, std::function<void()>& action) {
  auto* sub = app.add_subcommand("score", "Score candidate images against references");
  sub->add_option("--manifest", a.manifest, "CSV with reference_path,candidate_path,method_id[,image_id]")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", a.out, "Score table CSV (default: standard output)");
  sub->add_option("--metrics", a.metrics, "Comma-separated subset of mse,psnr,ssim,lpips,dists,fid");
  sub->add_option("--fid-out", a.fid_out, "Per-method FID table when fid is selected");
  sub->add_option("--extractor", a.extractor, "Feature extractor bundle stem (default: seeded random)");
  sub->add_option("--seed", a.seed, "Seed for the random extractor");
  sub->callback([&] {
    const auto metrics = parse_metric_list(a.metrics);
    if (std::find(metrics.begin(), metrics.end(), "fid") != metrics.end() && a.fid_out.empty()) {
      throw CLI::RequiredError("--fid-out (needed for fid)");
    }
    action = [&, metrics] {
      const auto rows = read_manifest(a.manifest);
      const bool want_fid = std::find(metrics.begin(), metrics.end(), "fid") != metrics.end();
      const bool need_features = want_fid || std::find(metrics.begin(), metrics.end(), "lpips") != metrics.end() ||
                                 std::find(metrics.begin(), metrics.end(), "dists") != metrics.end();
      std::optional<iqa::FeatureExtractor> extractor;
      if (need_features) extractor = make_extractor(a.extractor, a.seed);

      std::ofstream file;
      if (!a.out.empty()) {
        if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
        file.open(a.out, std::ios::binary);
        if (!file) throw RuntimeFailure("cannot write " + a.out);
      }
      std::ostream& sink = a.out.empty() ? out : file;
      std::vector<std::string> header = {"image_id", "method_id", "reference_path", "candidate_path"};
      for (const auto& m : metrics) {
        if (m != "fid") header.push_back(m);
      }
      sink << eval::csv_join(header) << "\n" << std::flush;

      std::map<std::string, std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>>> pools;
      for (const auto& row : rows) {
        const auto ref = read_image(row.reference);
        const auto cand = read_image(row.candidate);
        if (!ref.same_shape(cand)) {
          throw RuntimeFailure("image '" + row.image_id + "' (" + row.method_id +
                               "): reference and candidate differ in shape");
        }
        std::vector<std::string> fields = {row.image_id, row.method_id, row.reference_text, row.candidate_text};
        std::optional<iqa::MsePsnr> mp;
        for (const auto& m : metrics) {
          if (m == "mse" || m == "psnr") {
            if (!mp) mp = iqa::mse_psnr(ref, cand);
            fields.push_back(fmt(m == "mse" ? mp->mse : mp->psnr));
          } else if (m == "ssim") {
            fields.push_back(fmt(iqa::ssim_image(ref, cand).score));
          } else if (m == "lpips") {
            fields.push_back(fmt(iqa::lpips_score(ref, cand, *extractor)));
          } else if (m == "dists") {
            fields.push_back(fmt(iqa::dists_score(ref, cand, *extractor)));
          }
        }
        if (want_fid) {
          auto& pool = pools[row.method_id];
          pool.first.push_back(iqa::pooled_features(ref, *extractor));
          pool.second.push_back(iqa::pooled_features(cand, *extractor));
        }
        // Each row is flushed as soon as its pair is scored.
        sink << eval::csv_join(fields) << "\n" << std::flush;
      }
      if (want_fid) write_text(a.fid_out, method_fid_csv(pools));
      err << "score: " << rows.size() << " rows\n";
    };
  });
}

// fid

struct FidArgs {
  std::string ref_dir;
  std::string cand_dir;
  std::string extractor;
  std::uint64_t seed = 0;
};

void add_fid(CLI::App& app, FidArgs& a, std::ostream& out, std::function<void()>& action) {
  auto* sub = app.add_subcommand("fid", "Frechet distance between two image directories");
  sub->add_option("--ref-dir", a.ref_dir, "Reference images")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--cand-dir", a.cand_dir, "Candidate images")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--extractor", a.extractor, "Feature extractor bundle stem (default: seeded random)");
  sub->add_option("--seed", a.seed, "Seed for the random extractor");
  sub->callback([&] {
    action = [&] {
      const auto extractor = make_extractor(a.extractor, a.seed);
      auto pool = [&](const std::string& dir) {
        std::vector<std::vector<double>> features;
        for (const auto& f : list_images(dir)) features.push_back(iqa::pooled_features(read_image(f), extractor));
        return iqa::gaussian_stats(features);
      };
      out << fmt(iqa::fid(pool(a.ref_dir), pool(a.cand_dir))) << "\n";
    };
  });
}

// evaluate

struct EvaluateArgs {
  std::string mos;
  std::string scores;
  std::string method_metrics;
  std::string latency;
  std::string out_dir;
  double alpha = eval::kDefaultAlpha;
};

void add_evaluate(CLI::App& app, EvaluateArgs& a, std::ostream& err, std::function<void()>& action) {
  auto* sub = app.add_subcommand("evaluate", "Compare metric scores with MOS ratings and write the report");
  sub->add_option("--mos", a.mos, "MOS CSV (rater_id,image_id,method_id,score)")->required()->check(CLI::ExistingFile);
  sub->add_option("--scores", a.scores, "Score table from the score subcommand")->check(CLI::ExistingFile);
  sub->add_option("--method-metrics", a.method_metrics, "metric,method_id,value table (e.g. FID)")
      ->check(CLI::ExistingFile);
  sub->add_option("--latency", a.latency, "Latency table from the bench subcommand")->check(CLI::ExistingFile);
  sub->add_option("--out", a.out_dir, "Report directory")->required();
  sub->add_option("--alpha", a.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  sub->callback([&] {
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw CLI::ValidationError("--alpha", "must lie in (0, 1)");
    action = [&] {
      eval::EvalInputs inputs;
      inputs.alpha = a.alpha;
      inputs.records = eval::ingest_mos(read_text(a.mos));
      if (!a.scores.empty()) inputs.metric_tables = eval::parse_metric_table_csv(read_text(a.scores));
      if (!a.method_metrics.empty()) inputs.method_metrics = eval::parse_method_metric_csv(read_text(a.method_metrics));
      if (!a.latency.empty()) inputs.latency = eval::parse_latency_csv(read_text(a.latency));
      const auto report = eval::build_report(inputs);
      eval::write_report_files(report, a.out_dir);
      for (const auto& m : report.metrics) err << m.verdict << "\n";
    };
  });
}

// bench

struct BenchArgs {
  std::vector<std::string> models;
  int height = 64;
  int width = 64;
  int reps = 20;
  int warmup = 1;
  int espcn_factor = 0;
  int srgan_blocks = -1;
  int srgan_factor = 4;
  std::uint64_t seed = 0;
  std::string out;
};

void add_bench(CLI::App& app, BenchArgs& a, std::ostream& out, std::function<void()>& action) {
  auto* sub = app.add_subcommand("bench", "Median end-to-end upscale latency per model");
  sub->add_option("--model", a.models, "Bundle stems");
  sub->add_option("--height", a.height, "Input height")->check(CLI::Range(1, 8192));
  sub->add_option("--width", a.width, "Input width")->check(CLI::Range(1, 8192));
  sub->add_option("--reps", a.reps, "Timed repetitions")->check(CLI::Range(eval::kMinRepetitions, 100000));
  sub->add_option("--warmup", a.warmup, "Untimed warm-up runs")->check(CLI::Range(0, 1000));
  sub->add_option("--espcn", a.espcn_factor, "Also time a randomly initialized ESPCN at this factor")
      ->check(CLI::Range(1, 16));
  sub->add_option("--srgan-blocks", a.srgan_blocks, "Also time a randomly initialized SRGAN generator")
      ->check(CLI::Range(0, 64));
  sub->add_option("--srgan-factor", a.srgan_factor, "Factor for --srgan-blocks")->check(CLI::IsMember({2, 4}));
  sub->add_option("--seed", a.seed, "Seed for generated models");
  sub->add_option("--out", a.out, "Latency CSV (default: standard output)");
  sub->callback([&] {
    if (a.models.empty() && a.espcn_factor == 0 && a.srgan_blocks < 0) {
      throw CLI::RequiredError("--model, --espcn or --srgan-blocks");
    }
    action = [&] {
      std::vector<fs::path> stems(a.models.begin(), a.models.end());
      auto models = eval::load_bench_models(stems);
      if (a.espcn_factor > 0) {
        sr::EspcnConfig ec;
        ec.r = a.espcn_factor;
        auto spec = sr::build_espcn(ec);
        auto weights = nn::init_weights(spec, a.seed);
        models.push_back({"espcn", {std::move(spec), std::move(weights)}});
      }
      if (a.srgan_blocks >= 0) {
        auto spec = sr::build_srgan_generator(a.srgan_blocks, a.srgan_factor);
        auto weights = nn::init_weights(spec, a.seed);
        models.push_back({"srgan_b" + std::to_string(a.srgan_blocks), {std::move(spec), std::move(weights)}});
      }
      const auto stats = eval::bench_upscale(models, a.height, a.width, a.reps, a.warmup);
      if (a.out.empty()) {
        out << eval::latency_to_csv(stats);
      } else {
        write_text(a.out, eval::latency_to_csv(stats));
      }
    };
  });
}

// serve-mos

struct ServeArgs {
  std::string data_dir = ".";
  std::string ui_dir;
  std::string host = "127.0.0.1";
  int port = serve::kDefaultPort;
};

void add_serve(CLI::App& app, ServeArgs& a, std::ostream& err, std::function<void()>& action) {
  auto* sub = app.add_subcommand("serve-mos", "Serve the MOS rating API and UI");
  sub->add_option("--data-dir", a.data_dir, "Directory with session.json (SURVX_DATA_DIR overrides)");
  sub->add_option("--ui-dir", a.ui_dir, "Static UI assets (default: <data-dir>/ui)");
  sub->add_option("--host", a.host, "Bind address");
  sub->add_option("--port", a.port, "TCP port")->check(CLI::Range(0, 65535));
  sub->callback([&] {
    action = [&] {
      serve::ServeConfig cfg;
      cfg.data_dir = serve::resolve_data_dir(a.data_dir);
      cfg.ui_dir = a.ui_dir;
      cfg.host = a.host;
      cfg.port = a.port;
      serve::MosServer server(cfg);
      const int port = server.bind();
      err << "serve-mos: listening on http://" << a.host << ":" << port << " with data from "
          << cfg.data_dir.string() << "\n";
      server.serve();
    };
  });
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Super-resolution training, scoring and evaluation toolkit", "survx"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::function<void()> action;
  DegradeArgs degrade_args;
  TrainArgs train_args;
  UpscaleArgs upscale_args;
  ScoreArgs score_args;
  FidArgs fid_args;
  EvaluateArgs evaluate_args;
  BenchArgs bench_args;
  ServeArgs serve_args;
  add_degrade(app, degrade_args, action);
  add_train(app, train_args, err, action);
  add_upscale(app, upscale_args, action);
  add_score(app, score_args, out, err, action);
  add_fid(app, fid_args, out, action);
  add_evaluate(app, evaluate_args, err, action);
  add_bench(app, bench_args, out, action);
  add_serve(app, serve_args, err, action);

  std::vector<const char*> argv = {"survx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "survx: error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace survx::cli
