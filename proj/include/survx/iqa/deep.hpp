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

#include <vector>

#include "survx/iqa/features.hpp"

namespace survx::iqa {

inline constexpr double kLpipsEps = 1e-10;

// Per-tap, per-channel weights for the LPIPS-style distance. An empty outer
// vector means weight 1 everywhere.
using LpipsWeights = std::vector<std::vector<double>>;

// Sum over maps of sum_c w_c * mean_{h,w} (xhat - yhat)^2, where xhat is the
// feature vector at each position divided by its L2 norm (+eps).
double lpips_distance(const std::vector<nn::Tensor>& fx, const std::vector<nn::Tensor>& fy,
                      const LpipsWeights& weights = {});

// 1 - lpips_distance over the extractor taps (the raw image is excluded).
double lpips_score(const ImageTensor& x, const ImageTensor& y, const FeatureExtractor& extractor,
                   const LpipsWeights& weights = {});

struct DistsWeights {
  std::vector<double> alpha;  // texture (global mean) weight per map
  std::vector<double> beta;   // structure (global covariance) weight per map
};

inline constexpr double kDistsC1 = 1e-6;
inline constexpr double kDistsC2 = 1e-6;

// alpha_j = beta_j = 1 / (2 * maps)
DistsWeights uniform_dists_weights(std::size_t maps);

// Per-map texture and structure similarity, each averaged over channels.
struct DistsTerms {
  std::vector<double> texture;
  std::vector<double> structure;
};
DistsTerms dists_terms(const std::vector<nn::Tensor>& fx, const std::vector<nn::Tensor>& fy,
                       double c1 = kDistsC1, double c2 = kDistsC2);

// 1 - sum_j (alpha_j * texture_j + beta_j * structure_j). Weights must sum to 1.
double dists_distance(const std::vector<nn::Tensor>& fx, const std::vector<nn::Tensor>& fy,
                      const DistsWeights& weights);

// 1 - dists_distance over every map including the raw image. Empty weights
// select the uniform weighting.
double dists_score(const ImageTensor& x, const ImageTensor& y, const FeatureExtractor& extractor,
                   const DistsWeights& weights = {});

}  // namespace survx::iqa
