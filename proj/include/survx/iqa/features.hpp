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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "survx/image.hpp"
#include "survx/iqa/common.hpp"
#include "survx/nn/network.hpp"

namespace survx::iqa {

// VGG-style extractor: each stage is `convs` conv3x3+ReLU layers at
// `channels` width; stages after the first start with a 2x2 max pool. The
// network outputs are the taps, one after each stage's last ReLU.
struct StageConfig {
  int convs = 2;
  int channels = 64;
};

struct FeatureExtractor {
  nn::NetworkSpec spec;
  nn::WeightStore weights;

  // Number of feature maps including the raw image at index 0.
  std::size_t map_count() const { return spec.outputs.size() + 1; }
};

// Feature maps for one image; index 0 is the input image itself.
using FeatureMaps = std::vector<nn::Tensor>;

std::vector<StageConfig> vgg16_stages();
// Narrow five-stage variant used when no trained weights are supplied.
std::vector<StageConfig> compact_stages();

nn::NetworkSpec build_extractor_spec(const std::vector<StageConfig>& stages, int input_channels = 3);

// He-initialized weights; deterministic per seed.
FeatureExtractor random_extractor(std::uint64_t seed, const std::vector<StageConfig>& stages = compact_stages(),
                                  int input_channels = 3);

FeatureExtractor load_extractor(const std::filesystem::path& stem);

// Matches the image to the extractor's input channels (luma or gray
// replication), then runs the network. Throws kWeightMismatch when the
// weights do not fit the spec.
FeatureMaps extract_features(const ImageTensor& img, const FeatureExtractor& extractor);

// Global spatial mean of the deepest tap, one value per channel.
std::vector<double> pooled_features(const ImageTensor& img, const FeatureExtractor& extractor);

}  // namespace survx::iqa
