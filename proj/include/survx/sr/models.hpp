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

#include <stdexcept>
#include <string>

#include "survx/nn/network.hpp"

namespace survx::sr {

enum class SrErrc {
  kUnsupportedFactor,
  kEmptyDataset,
  kDivergedLoss,
  kWeightMismatch,
  kInvalidConfig,
};

class SrError : public std::runtime_error {
 public:
  SrError(SrErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  SrErrc code() const noexcept { return code_; }

 private:
  SrErrc code_;
};

enum class InputMode { kLuma, kRgb };
enum class HiddenActivation { kTanh, kRelu };

std::string to_string(InputMode mode);
InputMode input_mode_from_string(const std::string& s);
std::string to_string(HiddenActivation act);
HiddenActivation hidden_activation_from_string(const std::string& s);

// Three-layer sub-pixel CNN: conv(5,64) -> act -> conv(3,32) -> act ->
// conv(3, c*r^2) -> pixel_shuffle(r). All convolutions use same padding.
struct EspcnConfig {
  int r = 4;
  InputMode input_mode = InputMode::kLuma;
  HiddenActivation activation = HiddenActivation::kTanh;
};

inline constexpr int kEspcnKernels[3] = {5, 3, 3};
inline constexpr int kEspcnFeatures[2] = {64, 32};

int image_channels(InputMode mode) noexcept;
nn::NetworkSpec build_espcn(const EspcnConfig& cfg);

// Residual generator: head conv(9,64)+PReLU, residual blocks of
// conv-BN-PReLU-conv-BN-add, post conv+BN with a skip from the head,
// log2(r) stages of conv(3,256)+shuffle(2)+PReLU, final conv(9, channels).
nn::NetworkSpec build_srgan_generator(int residual_blocks, int r, int channels = 3);

// Node count emitted by build_srgan_generator.
constexpr int srgan_generator_node_count(int residual_blocks, int upsample_stages) {
  return 3 + 6 * residual_blocks + 3 + 3 * upsample_stages;
}

// Eight 3x3 convs (64,64,128,128,256,256,512,512) with stride 2 on every
// second layer, LeakyReLU(0.2), batch norm after all but the first conv,
// dense(1024) + LeakyReLU + dense(1) + sigmoid. The dense input size depends
// on the input resolution.
nn::NetworkSpec build_srgan_discriminator(int height = 96, int width = 96, int channels = 3);

}  // namespace survx::sr
