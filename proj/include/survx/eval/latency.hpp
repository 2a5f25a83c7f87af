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

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "survx/eval/common.hpp"
#include "survx/nn/weights.hpp"

namespace survx::eval {

inline constexpr int kMinRepetitions = 5;

struct LatencyStats {
  std::string model;
  double median_ms = 0.0;
  double q1_ms = 0.0;
  double q3_ms = 0.0;
  double iqr_ms = 0.0;
  int repetitions = 0;
  std::vector<double> samples_ms;
};

struct BenchTarget {
  std::string name;
  std::function<void()> run;
};

// Targets are interleaved per repetition.
std::vector<LatencyStats> latency_bench(const std::vector<BenchTarget>& targets, int repetitions, int warmup = 1);

struct NamedBundle {
  std::string name;
  nn::ModelBundle bundle;
};

// End-to-end upscale of one seeded RGB image of the given size per model.
std::vector<LatencyStats> bench_upscale(const std::vector<NamedBundle>& models, int height, int width,
                                        int repetitions, int warmup = 1);

// model,median_ms,q1_ms,q3_ms,iqr_ms,repetitions
std::string latency_to_csv(const std::vector<LatencyStats>& stats);
std::vector<LatencyStats> parse_latency_csv(std::string_view csv);

// Loads each stem with load_bundle; failures raise kModelLoadFailure.
std::vector<NamedBundle> load_bench_models(const std::vector<std::filesystem::path>& stems);

}  // namespace survx::eval
