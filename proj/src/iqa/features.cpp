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

#include "survx/iqa/features.hpp"

#include "survx/nn/graph.hpp"
#include "survx/nn/init.hpp"
#include "survx/nn/weights.hpp"

namespace survx::iqa {

std::vector<StageConfig> vgg16_stages() { return {{2, 64}, {2, 128}, {3, 256}, {3, 512}, {3, 512}}; }

std::vector<StageConfig> compact_stages() { return {{2, 16}, {2, 32}, {2, 64}, {2, 64}, {2, 64}}; }

nn::NetworkSpec build_extractor_spec(const std::vector<StageConfig>& stages, int input_channels) {
  nn::NetworkSpec spec;
  spec.input_channels = input_channels;
  std::string x = spec.input_name;
  int in_c = input_channels;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::string p = "stage" + std::to_string(s + 1) + ".";
    if (s > 0) {
      spec.nodes.push_back({p + "pool", nn::OpKind::kMaxPool2, {}, {x}});
      x = p + "pool";
    }
    for (int k = 0; k < stages[s].convs; ++k) {
      nn::Node conv{p + "conv" + std::to_string(k + 1), nn::OpKind::kConv2d, {}, {x}};
      conv.params.kernel = 3;
      conv.params.padding = 1;
      conv.params.in_channels = in_c;
      conv.params.out_channels = stages[s].channels;
      spec.nodes.push_back(conv);
      const std::string relu = p + "relu" + std::to_string(k + 1);
      spec.nodes.push_back({relu, nn::OpKind::kRelu, {}, {conv.name}});
      x = relu;
      in_c = stages[s].channels;
    }
    spec.outputs.push_back(x);
  }
  spec.metadata = {{"model", "feature_extractor"}};
  nn::validate(spec);
  return spec;
}

FeatureExtractor random_extractor(std::uint64_t seed, const std::vector<StageConfig>& stages, int input_channels) {
  FeatureExtractor fx;
  fx.spec = build_extractor_spec(stages, input_channels);
  fx.weights = nn::init_weights(fx.spec, seed);
  return fx;
}

FeatureExtractor load_extractor(const std::filesystem::path& stem) {
  nn::ModelBundle b = nn::load_bundle(stem);
  return {std::move(b.spec), std::move(b.weights)};
}

FeatureMaps extract_features(const ImageTensor& img, const FeatureExtractor& extractor) {
  ImageTensor input = img;
  const int want = extractor.spec.input_channels;
  if (want == 1 && img.channels() == 3) {
    input = rgb_to_luma(img);
  } else if (want == 3 && img.channels() == 1) {
    input = merge_channels({img, img, img});
  } else if (want != img.channels()) {
    throw IqaError(IqaErrc::kWeightMismatch, "extractor expects " + std::to_string(want) + " channels");
  }
  const nn::Tensor x({static_cast<std::size_t>(input.channels()), static_cast<std::size_t>(input.height()),
                      static_cast<std::size_t>(input.width())},
                     input.samples());
  FeatureMaps maps{x};
  try {
    nn::ForwardResult fr = nn::forward(extractor.spec, extractor.weights, x, false);
    for (auto& t : fr.outputs) maps.push_back(std::move(t));
  } catch (const nn::NnError& e) {
    if (e.code() == nn::NnErrc::kMissingWeight || e.code() == nn::NnErrc::kShapeMismatch ||
        e.code() == nn::NnErrc::kNonFinite) {
      throw IqaError(IqaErrc::kWeightMismatch, e.what());
    }
    throw;
  }
  return maps;
}

std::vector<double> pooled_features(const ImageTensor& img, const FeatureExtractor& extractor) {
  const FeatureMaps maps = extract_features(img, extractor);
  const nn::Tensor& deepest = maps.back();
  const nn::Chw s = nn::chw_of(deepest);
  std::vector<double> out(s.c, 0.0);
  const std::size_t plane = s.h * s.w;
  for (std::size_t c = 0; c < s.c; ++c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < plane; ++i) acc += deepest[c * plane + i];
    out[c] = acc / static_cast<double>(plane);
  }
  return out;
}

}  // namespace survx::iqa
