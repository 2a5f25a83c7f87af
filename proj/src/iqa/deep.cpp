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

#include "survx/iqa/deep.hpp"

#include <cmath>

namespace survx::iqa {

namespace {

void check_pairing(const std::vector<nn::Tensor>& fx, const std::vector<nn::Tensor>& fy) {
  if (fx.size() != fy.size()) throw IqaError(IqaErrc::kDimMismatch, "feature map counts differ");
  for (std::size_t i = 0; i < fx.size(); ++i) {
    if (fx[i].dims() != fy[i].dims()) {
      throw IqaError(IqaErrc::kDimMismatch, "feature map " + std::to_string(i) + " dims differ");
    }
  }
}

void normalize_positions(const nn::Tensor& f, std::vector<double>& out) {
  const nn::Chw s = nn::chw_of(f);
  const std::size_t plane = s.h * s.w;
  out.resize(f.size());
  for (std::size_t i = 0; i < plane; ++i) {
    double norm = 0.0;
    for (std::size_t c = 0; c < s.c; ++c) norm += f[c * plane + i] * f[c * plane + i];
    const double inv = 1.0 / (std::sqrt(norm) + kLpipsEps);
    for (std::size_t c = 0; c < s.c; ++c) out[c * plane + i] = f[c * plane + i] * inv;
  }
}

}  // namespace

double lpips_distance(const std::vector<nn::Tensor>& fx, const std::vector<nn::Tensor>& fy,
                      const LpipsWeights& weights) {
  check_pairing(fx, fy);
  if (!weights.empty() && weights.size() != fx.size()) {
    throw IqaError(IqaErrc::kWeightShapeMismatch, "LPIPS needs one weight vector per tap");
  }
  double dist = 0.0;
  std::vector<double> nx, ny;
  for (std::size_t l = 0; l < fx.size(); ++l) {
    const nn::Chw s = nn::chw_of(fx[l]);
    if (!weights.empty() && weights[l].size() != s.c) {
      throw IqaError(IqaErrc::kWeightShapeMismatch, "LPIPS tap " + std::to_string(l) + " has " +
                                                        std::to_string(s.c) + " channels, weights have " +
                                                        std::to_string(weights[l].size()));
    }
    normalize_positions(fx[l], nx);
    normalize_positions(fy[l], ny);
    const std::size_t plane = s.h * s.w;
    for (std::size_t c = 0; c < s.c; ++c) {
      double acc = 0.0;
      for (std::size_t i = c * plane; i < (c + 1) * plane; ++i) {
        const double d = nx[i] - ny[i];
        acc += d * d;
      }
      const double w = weights.empty() ? 1.0 : weights[l][c];
      dist += w * acc / static_cast<double>(plane);
    }
  }
  return dist;
}

double lpips_score(const ImageTensor& x, const ImageTensor& y, const FeatureExtractor& extractor,
                   const LpipsWeights& weights) {
  if (!x.same_shape(y)) throw IqaError(IqaErrc::kDimMismatch, "lpips: image dimensions differ");
  FeatureMaps fx = extract_features(x, extractor);
  FeatureMaps fy = extract_features(y, extractor);
  fx.erase(fx.begin());
  fy.erase(fy.begin());
  return 1.0 - lpips_distance(fx, fy, weights);
}

DistsWeights uniform_dists_weights(std::size_t maps) {
  const double v = 1.0 / (2.0 * static_cast<double>(maps));
  return {std::vector<double>(maps, v), std::vector<double>(maps, v)};
}

DistsTerms dists_terms(const std::vector<nn::Tensor>& fx, const std::vector<nn::Tensor>& fy, double c1, double c2) {
  check_pairing(fx, fy);
  DistsTerms terms;
  for (std::size_t j = 0; j < fx.size(); ++j) {
    const nn::Chw s = nn::chw_of(fx[j]);
    const std::size_t plane = s.h * s.w;
    const double n = static_cast<double>(plane);
    double tex = 0.0, str = 0.0;
    for (std::size_t c = 0; c < s.c; ++c) {
      const double* a = fx[j].data() + c * plane;
      const double* b = fy[j].data() + c * plane;
      double ma = 0.0, mb = 0.0;
      for (std::size_t i = 0; i < plane; ++i) {
        ma += a[i];
        mb += b[i];
      }
      ma /= n;
      mb /= n;
      double va = 0.0, vb = 0.0, cov = 0.0;
      for (std::size_t i = 0; i < plane; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        va += da * da;
        vb += db * db;
        cov += da * db;
      }
      va /= n;
      vb /= n;
      cov /= n;
      tex += (2.0 * ma * mb + c1) / (ma * ma + mb * mb + c1);
      str += (2.0 * cov + c2) / (va + vb + c2);
    }
    terms.texture.push_back(tex / static_cast<double>(s.c));
    terms.structure.push_back(str / static_cast<double>(s.c));
  }
  return terms;
}

double dists_distance(const std::vector<nn::Tensor>& fx, const std::vector<nn::Tensor>& fy,
                      const DistsWeights& weights) {
  if (weights.alpha.size() != fx.size() || weights.beta.size() != fx.size()) {
    throw IqaError(IqaErrc::kWeightShapeMismatch, "DISTS needs one alpha and one beta per feature map");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < fx.size(); ++j) total += weights.alpha[j] + weights.beta[j];
  if (std::abs(total - 1.0) > 1e-9) {
    throw IqaError(IqaErrc::kWeightNormalization, "DISTS weights sum to " + std::to_string(total) + ", not 1");
  }
  const DistsTerms t = dists_terms(fx, fy);
  double sim = 0.0;
  for (std::size_t j = 0; j < fx.size(); ++j) sim += weights.alpha[j] * t.texture[j] + weights.beta[j] * t.structure[j];
  return 1.0 - sim;
}

double dists_score(const ImageTensor& x, const ImageTensor& y, const FeatureExtractor& extractor,
                   const DistsWeights& weights) {
  if (!x.same_shape(y)) throw IqaError(IqaErrc::kDimMismatch, "dists: image dimensions differ");
  const FeatureMaps fx = extract_features(x, extractor);
  const FeatureMaps fy = extract_features(y, extractor);
  const DistsWeights w = weights.alpha.empty() ? uniform_dists_weights(fx.size()) : weights;
  return 1.0 - dists_distance(fx, fy, w);
}

}  // namespace survx::iqa
