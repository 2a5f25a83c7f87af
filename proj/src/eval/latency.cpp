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

#include "survx/eval/latency.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "survx/eval/csv.hpp"
#include "survx/eval/stats.hpp"
#include "survx/sr/upscale.hpp"

namespace survx::eval {

std::vector<LatencyStats> latency_bench(const std::vector<BenchTarget>& targets, int repetitions, int warmup) {
  if (repetitions < kMinRepetitions) {
    throw EvalError(EvalErrc::kInvalidArgument,
                    "latency bench needs at least " + std::to_string(kMinRepetitions) + " repetitions");
  }
  for (int i = 0; i < std::max(warmup, 0); ++i) {
    for (const auto& t : targets) t.run();
  }
  std::vector<LatencyStats> stats(targets.size());
  for (int rep = 0; rep < repetitions; ++rep) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto start = std::chrono::steady_clock::now();
      targets[i].run();
      const auto stop = std::chrono::steady_clock::now();
      stats[i].samples_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    auto& s = stats[i];
    s.model = targets[i].name;
    s.repetitions = repetitions;
    std::vector<double> sorted = s.samples_ms;
    std::sort(sorted.begin(), sorted.end());
    s.median_ms = quantile_sorted(sorted, 0.5);
    s.q1_ms = quantile_sorted(sorted, 0.25);
    s.q3_ms = quantile_sorted(sorted, 0.75);
    s.iqr_ms = s.q3_ms - s.q1_ms;
  }
  return stats;
}

std::vector<LatencyStats> bench_upscale(const std::vector<NamedBundle>& models, int height, int width,
                                        int repetitions, int warmup) {
  if (height < 1 || width < 1) throw EvalError(EvalErrc::kInvalidArgument, "bench input must be non-empty");
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> samples(static_cast<std::size_t>(3) * height * width);
  for (auto& v : samples) v = dist(rng);
  const ImageTensor input(3, height, width, std::move(samples));
  std::vector<BenchTarget> targets;
  for (const auto& m : models) {
    targets.push_back({m.name, [&input, &m] { (void)sr::upscale(input, m.bundle); }});
  }
  return latency_bench(targets, repetitions, warmup);
}

std::string latency_to_csv(const std::vector<LatencyStats>& stats) {
  std::string out = "model,median_ms,q1_ms,q3_ms,iqr_ms,repetitions\n";
  for (const auto& s : stats) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g,%.17g,%.17g,%d\n", s.median_ms, s.q1_ms, s.q3_ms, s.iqr_ms,
                  s.repetitions);
    out += csv_escape(s.model) + buf;
  }
  return out;
}

std::vector<LatencyStats> parse_latency_csv(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() || lines.front() != "model,median_ms,q1_ms,q3_ms,iqr_ms,repetitions") {
    throw EvalError(EvalErrc::kBadHeader, "latency table must start with 'model,median_ms,q1_ms,q3_ms,iqr_ms,repetitions'",
                    1);
  }
  std::vector<LatencyStats> stats;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const int line_no = static_cast<int>(i) + 1;
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 6) {
      throw EvalError(EvalErrc::kMalformedRow, "latency row " + std::to_string(line_no) + ": expected 6 fields",
                      line_no);
    }
    try {
      LatencyStats s;
      s.model = f[0];
      s.median_ms = std::stod(f[1]);
      s.q1_ms = std::stod(f[2]);
      s.q3_ms = std::stod(f[3]);
      s.iqr_ms = std::stod(f[4]);
      s.repetitions = std::stoi(f[5]);
      stats.push_back(std::move(s));
    } catch (const std::logic_error&) {
      throw EvalError(EvalErrc::kMalformedRow, "latency row " + std::to_string(line_no) + ": bad number", line_no);
    }
  }
  return stats;
}

std::vector<NamedBundle> load_bench_models(const std::vector<std::filesystem::path>& stems) {
  std::vector<NamedBundle> models;
  for (const auto& stem : stems) {
    try {
      models.push_back({stem.filename().string(), nn::load_bundle(stem)});
    } catch (const std::exception& e) {
      throw EvalError(EvalErrc::kModelLoadFailure, "cannot load model '" + stem.string() + "': " + e.what());
    }
  }
  return models;
}

}  // namespace survx::eval
