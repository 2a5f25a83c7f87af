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

// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// fails. An optional argument restricts the run to criteria whose name
// contains it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradcheck.hpp"
#include "json_schema.hpp"
#include "oracles.hpp"
#include "survx/cli.hpp"
#include "survx/codec.hpp"
#include "survx/eval/latency.hpp"
#include "survx/eval/report.hpp"
#include "survx/eval/stats.hpp"
#include "survx/iqa/deep.hpp"
#include "survx/iqa/features.hpp"
#include "survx/iqa/fid.hpp"
#include "survx/iqa/pixel.hpp"
#include "survx/iqa/ssim.hpp"
#include "survx/nn/init.hpp"
#include "survx/nn/ops.hpp"
#include "survx/nn/weights.hpp"
#include "survx/sr/models.hpp"
#include "survx/sr/patches.hpp"
#include "survx/sr/trainer.hpp"
#include "survx/sr/upscale.hpp"
#include "test_images.hpp"

using namespace survx;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

nn::Tensor random_tensor(nn::Dims dims, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  const auto n = nn::element_count(dims);
  return nn::Tensor(std::move(dims), testing::random_values(n, seed, lo, hi));
}


oracle::Map to_map(const nn::Tensor& t) {
  const nn::Chw s = nn::chw_of(t);
  oracle::Map m(s.c, std::vector<double>(s.h * s.w));
  for (std::size_t c = 0; c < s.c; ++c) {
    for (std::size_t i = 0; i < s.h * s.w; ++i) m[c][i] = t[c * s.h * s.w + i];
  }
  return m;
}

std::vector<oracle::Map> to_maps(const std::vector<nn::Tensor>& ts) {
  std::vector<oracle::Map> out;
  for (const auto& t : ts) out.push_back(to_map(t));
  return out;
}

std::vector<std::vector<double>> random_spd(std::size_t d, std::uint64_t seed) {
  const auto b = testing::random_values(d * d, seed);
  std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) a[i][j] += b[i * d + k] * b[j * d + k];
    }
    a[i][i] += 0.05;
  }
  return a;
}

iqa::GaussianStats stats_of(const std::vector<double>& mean, const std::vector<std::vector<double>>& cov) {
  iqa::GaussianStats s;
  s.mean = mean;
  s.cov = iqa::Matrix(mean.size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    for (std::size_t j = 0; j < mean.size(); ++j) s.cov(i, j) = cov[i][j];
  }
  s.n = 100;
  return s;
}

const iqa::FeatureExtractor& extractor() {
  static const iqa::FeatureExtractor e = iqa::random_extractor(0);
  return e;
}

Outcome shape_law() {
  testing::TempDir dir("survx-accept-shape");
  int checked = 0;
  for (auto mode : {sr::InputMode::kLuma, sr::InputMode::kRgb}) {
    const auto spec = sr::build_espcn({4, mode});
    const auto stem = dir.path() / ("espcn_" + sr::to_string(mode));
    nn::save_bundle(stem, {spec, nn::init_weights(spec, 1)});
    const auto bundle = nn::load_bundle(stem);
    const std::size_t c = static_cast<std::size_t>(sr::image_channels(mode));
    for (std::size_t h : {17, 64, 100}) {
      for (std::size_t w : {17, 64, 100}) {
        const auto out = nn::run(bundle.spec, bundle.weights, random_tensor({c, h, w}, h * 1000 + w, 0.0, 1.0));
        if (out.dims() != nn::Dims{c, 4 * h, 4 * w}) {
          return {false, "c=" + std::to_string(c) + " " + std::to_string(h) + "x" + std::to_string(w) + " gave " +
                             nn::dims_to_string(out.dims())};
        }
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " input shapes, luma and rgb bundles"};
}

Outcome gradient_correctness() {
  nn::NetworkSpec spec;
  spec.input_channels = 2;
  nn::Node c1{"conv1", nn::OpKind::kConv2d, {}, {"input"}};
  c1.params = {3, 2, 4, 1, 1};
  nn::Node act{"prelu", nn::OpKind::kPrelu, {}, {"conv1"}};
  act.params.in_channels = act.params.out_channels = 4;
  nn::Node c2{"conv2", nn::OpKind::kConv2d, {}, {"prelu"}};
  c2.params = {3, 4, 8, 1, 1};
  nn::Node shuffle{"shuffle", nn::OpKind::kPixelShuffle, {}, {"conv2"}};
  shuffle.params.factor = 2;
  spec.nodes = {c1, act, c2, shuffle};
  spec.outputs = {"shuffle"};

  auto weights = nn::init_weights(spec, 3);
  weights.set("prelu.slope", random_tensor({4}, 4, 0.05, 0.5));
  weights.set("conv1.bias", random_tensor({4}, 5, -0.1, 0.1));
  const Stopwatch clock;
  const auto r = testing::gradient_check(spec, weights, random_tensor({2, 7, 6}, 6), 1e-5, 7);
  const double secs = clock.seconds();
  const bool pass = r.max_rel_error < 1e-4 && secs < 10.0;
  return {pass, "max relative error " + num(r.max_rel_error) + " over " + std::to_string(r.checked) +
                    " entries (worst " + r.worst + "), " + num(secs) + " s"};
}

Outcome oracle_equivalence() {
  double conv_err = 0.0, ssim_err = 0.0, dists_err = 0.0, fid_err = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = static_cast<std::uint64_t>(s);
    const int c = 1 + s % 3, k = 1 + (s * 5) % 4, f = 1 + 2 * (s % 3), stride = 1 + s % 2, pad = s % 3;
    const int h = 6 + s % 5, w = 5 + (s * 3) % 6;
    const auto x = random_tensor({std::size_t(c), std::size_t(h), std::size_t(w)}, 1000 + seed);
    const auto wt = random_tensor({std::size_t(k), std::size_t(c), std::size_t(f), std::size_t(f)}, 2000 + seed);
    const auto b = random_tensor({std::size_t(k)}, 3000 + seed);
    const auto out = nn::conv2d(x, wt, b, stride, pad);
    const auto ref = oracle::conv2d(x.values(), c, h, w, wt.values(), k, f, f, b.values(), stride, pad);
    if (out.size() != ref.size()) return {false, "conv output size mismatch at seed " + std::to_string(s)};
    for (std::size_t i = 0; i < ref.size(); ++i) conv_err = std::max(conv_err, std::fabs(out[i] - ref[i]));

    const auto p = testing::random_image(1, 16, 16, 4000 + seed);
    const auto q = testing::random_image(1, 16, 16, 5000 + seed);
    ssim_err = std::max(ssim_err, std::fabs(iqa::ssim(p, q).score - oracle::ssim(p.samples(), q.samples(), 16, 16)));

    const auto u = testing::random_image(3, 16, 16, 6000 + seed);
    const auto v = testing::random_image(3, 16, 16, 7000 + seed);
    const double dists = iqa::dists_score(u, v, extractor());
    const double want =
        oracle::dists_score(to_maps(iqa::extract_features(u, extractor())), to_maps(iqa::extract_features(v, extractor())));
    dists_err = std::max(dists_err, std::fabs(dists - want));

    const auto ma = testing::random_values(3, 8000 + seed), mb = testing::random_values(3, 8100 + seed);
    const auto ca = random_spd(3, 8200 + seed), cb = random_spd(3, 8300 + seed);
    fid_err = std::max(fid_err, std::fabs(iqa::fid(stats_of(ma, ca), stats_of(mb, cb)) - oracle::fid({ma, ca}, {mb, cb})));
  }
  const bool pass = conv_err <= 1e-12 && ssim_err <= 1e-9 && dists_err <= 1e-9 && fid_err <= 1e-6;
  return {pass, std::to_string(seeds) + " seeds each; max error conv " + num(conv_err) + " (tol 1e-12), ssim " +
                    num(ssim_err) + " (1e-9), dists " + num(dists_err) + " (1e-9), fid " + num(fid_err) + " (1e-6)"};
}

Outcome fid_closed_form() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mu(-3.0, 3.0), sigma(0.05, 4.0);
  double closed_err = 0.0, self_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double m1 = mu(rng), s1 = sigma(rng), m2 = mu(rng), s2 = sigma(rng);
    const auto a = stats_of({m1}, {{s1 * s1}});
    const auto b = stats_of({m2}, {{s2 * s2}});
    const double want = (m1 - m2) * (m1 - m2) + (s1 - s2) * (s1 - s2);
    closed_err = std::max(closed_err, std::fabs(iqa::fid(a, b) - want));
    self_err = std::max(self_err, std::fabs(iqa::fid(a, a)));
    const auto s3 = stats_of(testing::random_values(4, 50 + i), random_spd(4, 60 + i));
    self_err = std::max(self_err, std::fabs(iqa::fid(s3, s3)));
  }
  return {closed_err <= 1e-9 && self_err <= 1e-9,
          "20 one-dimensional pairs, max error " + num(closed_err) + "; max |fid(s,s)| " + num(self_err)};
}

Outcome metric_axioms() {
  const auto& e = extractor();
  const auto x = testing::natural_image(64, 64);
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  expect(iqa::mse_psnr(x, x).mse == 0.0, "mse(x,x)");
  expect(std::fabs(iqa::ssim_image(x, x).score - 1.0) <= 1e-9, "ssim(x,x)");
  expect(iqa::lpips_score(x, x, e) == 1.0, "lpips(x,x)");
  expect(std::fabs(iqa::dists_score(x, x, e) - 1.0) <= 1e-9, "dists(x,x)");

  const auto y = testing::add_gaussian_noise(x, 0.05, 2);
  expect(std::fabs(iqa::ssim_image(x, y).score - iqa::ssim_image(y, x).score) <= 1e-9, "ssim symmetry");
  expect(std::fabs(iqa::dists_score(x, y, e) - iqa::dists_score(y, x, e)) <= 1e-9, "dists symmetry");
  expect(std::fabs(iqa::lpips_score(x, y, e) - iqa::lpips_score(y, x, e)) <= 1e-9, "lpips symmetry");
  const auto sa = stats_of(testing::random_values(3, 1), random_spd(3, 2));
  const auto sb = stats_of(testing::random_values(3, 3), random_spd(3, 4));
  expect(std::fabs(iqa::fid(sa, sb) - iqa::fid(sb, sa)) <= 1e-9, "fid symmetry");

  std::string trace;
  double prev_ssim = 2.0, prev_dists = 2.0, prev_mse = -1.0;
  for (double sigma : {0.02, 0.05, 0.1}) {
    const auto noisy = testing::add_gaussian_noise(x, sigma, 1);
    const double s = iqa::ssim_image(x, noisy).score;
    const double d = iqa::dists_score(x, noisy, e);
    const double m = iqa::mse_psnr(x, noisy).mse;
    expect(s < prev_ssim, "ssim not decreasing at sigma " + num(sigma));
    expect(d < prev_dists, "dists not decreasing at sigma " + num(sigma));
    expect(m > prev_mse, "mse not increasing at sigma " + num(sigma));
    trace += " sigma " + num(sigma) + ": ssim " + num(s) + " dists " + num(d) + ";";
    prev_ssim = s;
    prev_dists = d;
    prev_mse = m;
  }
  if (!failures.empty()) {
    std::string msg;
    for (const auto& f : failures) msg += f + "; ";
    return {false, msg + trace};
  }
  return {true, "identity and symmetry hold;" + trace};
}

Outcome texture_robustness() {
  int holds = 0;
  std::string detail;
  for (const auto& t : testing::standard_textures(64)) {
    const auto shifted = testing::cyclic_shift(t.image, 0, 2);
    const double ssim_drop = 1.0 - iqa::ssim_image(t.image, shifted).score;
    const double dists_drop = 1.0 - iqa::dists_score(t.image, shifted, extractor());
    if (dists_drop < ssim_drop) ++holds;
    detail += " " + t.name + " " + num(dists_drop) + "<" + num(ssim_drop) + (dists_drop < ssim_drop ? "" : "(no)");
  }
  return {holds >= 4, std::to_string(holds) + "/5 textures (dists drop < ssim drop):" + detail};
}

Outcome trainer() {
  const auto spec = sr::build_espcn({4, sr::InputMode::kLuma});
  const auto hr = to_luma(testing::natural_image(17 * 4 + 14 * 4 * 3, 17 * 4 + 14 * 4 * 4));
  auto patches = sr::extract_training_patches(hr, 4, sr::kEspcnKernels);
  if (patches.size() < 20) return {false, "only " + std::to_string(patches.size()) + " patches"};
  patches.resize(20);

  sr::TrainConfig cfg;
  cfg.seed = 5;
  cfg.max_epochs = 500;
  const Stopwatch clock;
  const auto a = sr::train_espcn(spec, patches, cfg);
  const double secs = clock.seconds();
  const auto b = sr::train_espcn(spec, patches, cfg);

  const double initial = a.log.front().train_loss;
  const double final_mse = sr::dataset_mse(spec, a.weights, patches);
  double min_lr = cfg.lr_initial;
  for (const auto& e : a.log) min_lr = std::min(min_lr, e.learning_rate);
  bool same_log = a.log.size() == b.log.size();
  for (std::size_t i = 0; same_log && i < a.log.size(); ++i) same_log = a.log[i].train_loss == b.log[i].train_loss;
  const bool deterministic = a.weights == b.weights && same_log;
  const int epochs = a.log.back().epoch;
  const bool pass = final_mse < 0.1 * initial && epochs <= 500 && min_lr >= 1e-4 && cfg.lr_final == 1e-4 &&
                    deterministic && secs < 300.0;
  return {pass, "MSE " + num(initial) + " -> " + num(final_mse) + " (" + num(100.0 * final_mse / initial) +
                    "% of initial) in " + std::to_string(epochs) + " epochs; lowest lr " + num(min_lr) + "; " +
                    (deterministic ? "deterministic" : "NOT deterministic") + "; " + num(secs) + " s per run"};
}

Outcome patch_extraction() {
  std::string detail;
  for (int r : {2, 3, 4}) {
    const auto strides = sr::patch_strides(sr::kEspcnKernels, r);
    if (strides.lr != 14 || strides.hr != 14 * r) return {false, "wrong strides for r=" + std::to_string(r)};
    const int size = 170 * r;
    const auto hr = to_luma(testing::natural_image(size, size));
    const auto patches = sr::extract_training_patches(hr, r, sr::kEspcnKernels);
    std::vector<int> owned(static_cast<std::size_t>(size) * size, 0);
    int y_end = 0, x_end = 0;
    for (const auto& p : patches) {
      if (p.hr_y != p.lr_y * r || p.hr_x != p.lr_x * r) return {false, "misaligned patch origin"};
      if (p.lr.height() != 17 || p.hr.height() != 17 * r) return {false, "wrong patch size"};
      if (!(p.hr == hr.crop(p.hr_y, p.hr_x, 17 * r, 17 * r))) return {false, "HR patch is not an image crop"};
      const auto reg = sr::owned_region(p, strides);
      y_end = std::max(y_end, reg.y1);
      x_end = std::max(x_end, reg.x1);
      for (int y = reg.y0; y < reg.y1; ++y) {
        for (int x = reg.x0; x < reg.x1; ++x) ++owned[static_cast<std::size_t>(y) * size + x];
      }
    }
    const int per_side = (170 - 17) / 14 + 1;
    if (static_cast<int>(patches.size()) != per_side * per_side) return {false, "unexpected patch count"};
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const int want = (y < y_end && x < x_end) ? 1 : 0;
        if (owned[static_cast<std::size_t>(y) * size + x] != want) {
          return {false, "r=" + std::to_string(r) + ": pixel (" + std::to_string(y) + "," + std::to_string(x) +
                             ") owned " + std::to_string(owned[static_cast<std::size_t>(y) * size + x]) + " times"};
        }
      }
    }
    detail += " r=" + std::to_string(r) + ": " + std::to_string(patches.size()) + " patches, strides 14/" +
              std::to_string(14 * r) + ", " + std::to_string(y_end) + "x" + std::to_string(x_end) + " tiled once;";
  }
  return {true, detail.substr(1)};
}

Outcome latency_ordering() {
  const auto espcn = sr::build_espcn({4, sr::InputMode::kLuma});
  const auto srgan = sr::build_srgan_generator(16, 4);
  const auto stats = eval::bench_upscale({{"espcn", {espcn, nn::init_weights(espcn, 1)}},
                                          {"srgan_b16", {srgan, nn::init_weights(srgan, 2)}}},
                                         64, 64, 20, 1);
  const double e = stats[0].median_ms, s = stats[1].median_ms;
  return {e < s, "median espcn " + num(e) + " ms, srgan B=16 " + num(s) + " ms (" + num(s / e) +
                     "x) at 64x64 -> 256x256, 20 repetitions"};
}

struct StatsCase {
  std::vector<double> a, b;
  double t, df, welch_p, u, z, mw_p;
};

const std::vector<StatsCase> kStatsReference = {
#include "stats_reference.inc"
};

Outcome statistics() {
  double welch_err = 0.0, mw_err = 0.0;
  int verdict_mismatch = 0, rejects = 0;
  for (const auto& c : kStatsReference) {
    const auto w = eval::welch_ttest(c.a, c.b);
    const auto m = eval::mann_whitney_u(c.a, c.b);
    welch_err = std::max(welch_err, std::fabs(w.p - c.welch_p));
    mw_err = std::max(mw_err, std::fabs(m.p - c.mw_p));
    if ((w.p < eval::kDefaultAlpha) != (c.welch_p < eval::kDefaultAlpha)) ++verdict_mismatch;
    if ((m.p < eval::kDefaultAlpha) != (c.mw_p < eval::kDefaultAlpha)) ++verdict_mismatch;
    rejects += (c.welch_p < eval::kDefaultAlpha) + (c.mw_p < eval::kDefaultAlpha);
  }
  const bool pass = kStatsReference.size() == 20 && welch_err <= 1e-8 && mw_err <= 1e-8 && verdict_mismatch == 0;
  return {pass, std::to_string(kStatsReference.size()) + " pairs; max p error welch " + num(welch_err) +
                    ", mann-whitney " + num(mw_err) + "; " + std::to_string(verdict_mismatch) +
                    " verdict mismatches (" + std::to_string(rejects) + " of 40 reference verdicts reject)"};
}

int survx(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::dispatch(args, o, e);
  if (out) *out = o.str();
  if (code != 0) std::cerr << "survx " << args.front() << " failed: " << e.str();
  return code;
}

Outcome end_to_end() {
  const Stopwatch clock;
  testing::TempDir dir("survx-accept-e2e");
  const auto root = dir.path();
  for (const char* sub : {"hr", "lr", "bicubic", "espcn"}) fs::create_directories(root / sub);

  const int frames = 15;
  const auto scene = testing::natural_image(192, 192);
  std::vector<std::string> ids;
  for (int i = 0; i < frames; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "frame%02d", i);
    ids.emplace_back(id);
    write_image(root / "hr" / (ids.back() + ".png"), scene.crop(6 * i, 5 * (i % 7) + 3 * i, 96, 96));
  }
  for (const auto& id : ids) {
    if (survx({"degrade", "--in", (root / "hr" / (id + ".png")).string(), "--out",
               (root / "lr" / (id + ".png")).string(), "--factor", "4"}) != 0) {
      return {false, "degrade failed for " + id};
    }
  }
  if (survx({"train-espcn", "--images", (root / "hr").string(), "--out", (root / "espcn_x4").string(), "--factor",
             "4", "--epochs", "60", "--seed", "1", "--log", (root / "train.csv").string()}) != 0) {
    return {false, "train-espcn failed"};
  }
  std::string manifest = "reference_path,candidate_path,method_id,image_id\n";
  for (const auto& id : ids) {
    const auto lr = (root / "lr" / (id + ".png")).string();
    if (survx({"upscale", "--in", lr, "--out", (root / "bicubic" / (id + ".png")).string(), "--method", "bicubic",
               "--factor", "4"}) != 0 ||
        survx({"upscale", "--in", lr, "--out", (root / "espcn" / (id + ".png")).string(), "--method", "espcn",
               "--model", (root / "espcn_x4").string()}) != 0) {
      return {false, "upscale failed for " + id};
    }
    for (const char* method : {"bicubic", "espcn"}) {
      manifest += "hr/" + id + ".png," + method + "/" + id + ".png," + method + "," + id + "\n";
    }
  }
  std::ofstream(root / "manifest.csv") << manifest;
  if (survx({"score", "--manifest", (root / "manifest.csv").string(), "--out", (root / "scores.csv").string(),
             "--metrics", "mse,psnr,ssim,lpips,dists,fid", "--fid-out", (root / "fid.csv").string()}) != 0) {
    return {false, "score failed"};
  }

  // 15 raters x 15 frames, each rater seeing one method per frame.
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> jitter(-1, 1);
  std::string mos = "rater_id,image_id,method_id,score\n";
  for (int rater = 0; rater < 15; ++rater) {
    for (int f = 0; f < frames; ++f) {
      const bool espcn = (rater + f) % 2 == 0;
      const int score = std::clamp((espcn ? 4 : 3) + jitter(rng), 1, 5);
      mos += "rater" + std::to_string(rater) + "," + ids[static_cast<std::size_t>(f)] + "," +
             (espcn ? "espcn" : "bicubic") + "," + std::to_string(score) + "\n";
    }
  }
  std::ofstream(root / "mos.csv") << mos;
  if (survx({"evaluate", "--mos", (root / "mos.csv").string(), "--scores", (root / "scores.csv").string(),
             "--method-metrics", (root / "fid.csv").string(), "--out", (root / "report").string()}) != 0) {
    return {false, "evaluate failed"};
  }

  std::ifstream schema_in(std::string(SURVX_SOURCE_DIR) + "/schemas/report.schema.json");
  std::ifstream report_in(root / "report" / "report.json");
  const auto schema = nlohmann::json::parse(schema_in);
  const auto report = nlohmann::json::parse(report_in);
  const auto errors = testing::validate_json(report, schema);
  const double secs = clock.seconds();
  if (!errors.empty()) return {false, "report.json violates the schema: " + errors.front()};
  const bool pass = report["record_count"] == 225 && report["metrics"].size() == 6 && secs < 600.0;
  std::string verdicts;
  for (const auto& m : report["metrics"]) verdicts += " [" + m["verdict"].get<std::string>() + "]";
  return {pass, std::to_string(report["record_count"].get<int>()) + " ratings, " +
                    std::to_string(report["metrics"].size()) + " metrics, schema valid, " + num(secs) + " s;" +
                    verdicts};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string filter = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {"shape law", shape_law},
      {"gradient correctness", gradient_correctness},
      {"oracle equivalence", oracle_equivalence},
      {"fid closed form", fid_closed_form},
      {"metric axioms", metric_axioms},
      {"texture robustness", texture_robustness},
      {"trainer", trainer},
      {"patch extraction", patch_extraction},
      {"latency ordering", latency_ordering},
      {"statistics", statistics},
      {"end-to-end dry run", end_to_end},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
