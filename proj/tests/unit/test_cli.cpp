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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mos_fixture.hpp"
#include "survx/cli.hpp"
#include "survx/codec.hpp"
#include "survx/eval/report.hpp"
#include "test_images.hpp"

using namespace survx;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run survx_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// Two references with bicubic and degraded-then-bicubic candidates.
fs::path make_score_fixture(const fs::path& dir) {
  std::string manifest = "reference_path,candidate_path,method_id,image_id\n";
  for (int i = 0; i < 2; ++i) {
    const auto ref = testing::natural_image(32 + 8 * i, 32);
    write_image(dir / ("ref" + std::to_string(i) + ".png"), ref);
    write_image(dir / ("noisy" + std::to_string(i) + ".png"), testing::add_gaussian_noise(ref, 0.05, 3));
    write_image(dir / ("shifted" + std::to_string(i) + ".png"), testing::cyclic_shift(ref, 1, 0));
    manifest += "ref" + std::to_string(i) + ".png,noisy" + std::to_string(i) + ".png,noisy,img" + std::to_string(i) + "\n";
    manifest += "ref" + std::to_string(i) + ".png,shifted" + std::to_string(i) + ".png,shifted,img" +
                std::to_string(i) + "\n";
  }
  std::ofstream(dir / "manifest.csv") << manifest;
  return dir / "manifest.csv";
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(survx_run({}).code == cli::kExitUsage);
  CHECK(survx_run({"frobnicate"}).code == cli::kExitUsage);
  const auto missing = survx_run({"degrade", "--out", "x.png"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK_FALSE(missing.err.empty());
  CHECK(survx_run({"bench", "--reps", "0"}).code == cli::kExitUsage);
  CHECK(survx_run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("degrade and upscale") {
  testing::TempDir dir("survx-cli-degrade");
  write_image(dir.path() / "hr.png", testing::natural_image(256, 256));
  const auto r = survx_run({"degrade", "--in", (dir.path() / "hr.png").string(), "--out",
                            (dir.path() / "lr.png").string(), "--factor", "4"});
  REQUIRE(r.code == cli::kExitOk);
  const auto lr = read_image(dir.path() / "lr.png");
  CHECK(lr.height() == 64);
  CHECK(lr.width() == 64);
  CHECK(lr.channels() == 3);

  write_image(dir.path() / "odd.png", testing::natural_image(30, 30));
  CHECK(survx_run({"degrade", "--in", (dir.path() / "odd.png").string(), "--out", (dir.path() / "o.png").string(),
                   "--factor", "4"})
            .code == cli::kExitRuntime);
  CHECK(survx_run({"degrade", "--in", (dir.path() / "odd.png").string(), "--out", (dir.path() / "o.png").string(),
                   "--factor", "4", "--crop"})
            .code == cli::kExitOk);
  CHECK(read_image(dir.path() / "o.png").height() == 7);

  REQUIRE(survx_run({"upscale", "--in", (dir.path() / "lr.png").string(), "--out", (dir.path() / "up.png").string(),
                     "--method", "bicubic", "--factor", "4"})
              .code == cli::kExitOk);
  CHECK(read_image(dir.path() / "up.png").height() == 256);
  CHECK(survx_run({"upscale", "--in", (dir.path() / "lr.png").string(), "--out", (dir.path() / "x.png").string(),
                   "--method", "espcn"})
            .code != cli::kExitOk);
}

TEST_CASE("train, upscale with the bundle and reproduce bit for bit") {
  testing::TempDir dir("survx-cli-train");
  fs::create_directories(dir.path() / "train");
  write_image(dir.path() / "train" / "a.png", testing::natural_image(68, 68));
  write_image(dir.path() / "small.png", testing::natural_image(40, 36));
  auto train = [&](const std::string& stem) {
    return survx_run({"train-espcn", "--images", (dir.path() / "train").string(), "--out",
                      (dir.path() / stem).string(), "--log", (dir.path() / (stem + ".csv")).string(), "--factor", "2",
                      "--epochs", "3", "--seed", "5", "--max-patches", "4"});
  };
  REQUIRE(train("m1").code == cli::kExitOk);
  REQUIRE(train("m2").code == cli::kExitOk);
  CHECK(slurp(dir.path() / "m1.nnwb") == slurp(dir.path() / "m2.nnwb"));
  CHECK(slurp(dir.path() / "m1.csv") == slurp(dir.path() / "m2.csv"));
  CHECK(line_count(slurp(dir.path() / "m1.csv")) == 5);

  for (const std::string out : {"u1.png", "u2.png"}) {
    REQUIRE(survx_run({"upscale", "--in", (dir.path() / "small.png").string(), "--out", (dir.path() / out).string(),
                       "--method", "espcn", "--model", (dir.path() / "m1").string(), "--factor", "2"})
                .code == cli::kExitOk);
  }
  const auto up = read_image(dir.path() / "u1.png");
  CHECK(up.height() == 80);
  CHECK(up.width() == 72);
  CHECK(slurp(dir.path() / "u1.png") == slurp(dir.path() / "u2.png"));
  CHECK(survx_run({"upscale", "--in", (dir.path() / "small.png").string(), "--out", (dir.path() / "bad.png").string(),
                   "--method", "espcn", "--model", (dir.path() / "m1").string(), "--factor", "4"})
            .code == cli::kExitRuntime);
}

TEST_CASE("score, fid, evaluate") {
  testing::TempDir dir("survx-cli-score");
  const auto manifest = make_score_fixture(dir.path());
  const auto scores = dir.path() / "scores.csv";
  const auto scores2 = dir.path() / "scores2.csv";
  const auto fid = dir.path() / "fid.csv";
  auto score = [&](const fs::path& out) {
    return survx_run({"score", "--manifest", manifest.string(), "--out", out.string(), "--metrics",
                      "mse,psnr,ssim,lpips,dists,fid", "--fid-out", fid.string(), "--seed", "3"});
  };
  const auto r = score(scores);
  REQUIRE(r.code == cli::kExitOk);
  REQUIRE(score(scores2).code == cli::kExitOk);
  const auto table = slurp(scores);
  CHECK(table == slurp(scores2));
  CHECK(line_count(table) == 1 + 4);
  CHECK(table.rfind("image_id,method_id,reference_path,candidate_path,mse,psnr,ssim,lpips,dists\n", 0) == 0);
  CHECK(slurp(fid).rfind("metric,method_id,value\n", 0) == 0);

  const auto subset = survx_run({"score", "--manifest", manifest.string(), "--metrics", "ssim,dists"});
  REQUIRE(subset.code == cli::kExitOk);
  CHECK(line_count(subset.out) == 1 + 4);
  CHECK(survx_run({"score", "--manifest", manifest.string(), "--metrics", "ssim,bogus"}).code == cli::kExitUsage);
  CHECK(survx_run({"score", "--manifest", manifest.string(), "--metrics", "fid"}).code == cli::kExitUsage);

  fs::create_directories(dir.path() / "refs");
  fs::create_directories(dir.path() / "cands");
  for (int i = 0; i < 3; ++i) {
    const auto img = testing::natural_image(24 + 4 * i, 24);
    write_image(dir.path() / "refs" / ("r" + std::to_string(i) + ".png"), img);
    write_image(dir.path() / "cands" / ("c" + std::to_string(i) + ".png"), testing::add_gaussian_noise(img, 0.1, 1));
  }
  const auto same = survx_run({"fid", "--ref-dir", (dir.path() / "refs").string(), "--cand-dir",
                               (dir.path() / "refs").string()});
  REQUIRE(same.code == cli::kExitOk);
  CHECK(std::fabs(std::stod(same.out)) <= 1e-9);
  const auto diff = survx_run({"fid", "--ref-dir", (dir.path() / "refs").string(), "--cand-dir",
                               (dir.path() / "cands").string()});
  REQUIRE(diff.code == cli::kExitOk);
  CHECK(std::stod(diff.out) > 0.0);

  std::string mos = "rater_id,image_id,method_id,score\n";
  for (int rater = 0; rater < 6; ++rater) {
    for (int i = 0; i < 2; ++i) {
      mos += "r" + std::to_string(rater) + ",img" + std::to_string(i) + ",noisy," + std::to_string(2 + rater % 2) + "\n";
      mos += "r" + std::to_string(rater) + ",img" + std::to_string(i) + ",shifted," + std::to_string(4 + rater % 2) +
             "\n";
    }
  }
  std::ofstream(dir.path() / "mos.csv") << mos;
  auto evaluate = [&](const std::string& out) {
    return survx_run({"evaluate", "--mos", (dir.path() / "mos.csv").string(), "--scores", scores.string(),
                      "--method-metrics", fid.string(), "--out", (dir.path() / out).string()});
  };
  const auto ev = evaluate("report");
  REQUIRE(ev.code == cli::kExitOk);
  REQUIRE(evaluate("report2").code == cli::kExitOk);
  const auto json = slurp(dir.path() / "report" / "report.json");
  CHECK(json == slurp(dir.path() / "report2" / "report.json"));
  const auto report = eval::report_from_json(json);
  CHECK(report.record_count == 24);
  CHECK(report.metrics.size() == 6);
  CHECK(report.mos_ranking.front() == "shifted");
  CHECK(fs::exists(dir.path() / "report" / "distribution_noisy.csv"));

  std::ofstream(dir.path() / "bad_mos.csv") << "rater_id,image_id,method_id,score\nr,img0,noisy,9\n";
  const auto bad = survx_run({"evaluate", "--mos", (dir.path() / "bad_mos.csv").string(), "--out",
                              (dir.path() / "r3").string()});
  CHECK(bad.code == cli::kExitRuntime);
  CHECK(bad.err.find("row 2") != std::string::npos);
}

TEST_CASE("bench") {
  const auto r = survx_run({"bench", "--height", "8", "--width", "8", "--reps", "5", "--warmup", "0", "--espcn", "2",
                            "--srgan-blocks", "1", "--srgan-factor", "2"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.rfind("model,median_ms,q1_ms,q3_ms,iqr_ms,repetitions\n", 0) == 0);
  CHECK(line_count(r.out) == 3);
  CHECK(survx_run({"bench", "--reps", "5"}).code == cli::kExitUsage);
  CHECK(survx_run({"bench", "--model", "/nonexistent/stem"}).code == cli::kExitRuntime);
}
