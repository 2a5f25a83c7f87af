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

#include "survx/sr/models.hpp"

namespace survx::sr {

namespace {

nn::Node conv(std::string name, std::string input, int kernel, int in, int out) {
  nn::Node n{std::move(name), nn::OpKind::kConv2d, {}, {std::move(input)}};
  n.params.kernel = kernel;
  n.params.in_channels = in;
  n.params.out_channels = out;
  n.params.padding = kernel / 2;
  return n;
}

nn::Node unary(std::string name, nn::OpKind kind, std::string input) {
  return nn::Node{std::move(name), kind, {}, {std::move(input)}};
}

}  // namespace

std::string to_string(InputMode mode) { return mode == InputMode::kLuma ? "luma" : "rgb"; }

InputMode input_mode_from_string(const std::string& s) {
  if (s == "luma") return InputMode::kLuma;
  if (s == "rgb") return InputMode::kRgb;
  throw SrError(SrErrc::kInvalidConfig, "unknown input mode '" + s + "'");
}

std::string to_string(HiddenActivation act) { return act == HiddenActivation::kTanh ? "tanh" : "relu"; }

HiddenActivation hidden_activation_from_string(const std::string& s) {
  if (s == "tanh") return HiddenActivation::kTanh;
  if (s == "relu") return HiddenActivation::kRelu;
  throw SrError(SrErrc::kInvalidConfig, "unknown activation '" + s + "'");
}

int image_channels(InputMode mode) noexcept { return mode == InputMode::kLuma ? 1 : 3; }

nn::NetworkSpec build_espcn(const EspcnConfig& cfg) {
  if (cfg.r < 1) throw SrError(SrErrc::kUnsupportedFactor, "upscale factor must be >= 1");
  const int c = image_channels(cfg.input_mode);
  const auto act = cfg.activation == HiddenActivation::kTanh ? nn::OpKind::kTanh : nn::OpKind::kRelu;

  nn::NetworkSpec spec;
  spec.input_channels = c;
  spec.nodes.push_back(conv("conv1", "input", kEspcnKernels[0], c, kEspcnFeatures[0]));
  spec.nodes.push_back(unary("act1", act, "conv1"));
  spec.nodes.push_back(conv("conv2", "act1", kEspcnKernels[1], kEspcnFeatures[0], kEspcnFeatures[1]));
  spec.nodes.push_back(unary("act2", act, "conv2"));
  spec.nodes.push_back(conv("conv3", "act2", kEspcnKernels[2], kEspcnFeatures[1], c * cfg.r * cfg.r));
  nn::Node shuffle = unary("shuffle", nn::OpKind::kPixelShuffle, "conv3");
  shuffle.params.factor = cfg.r;
  spec.nodes.push_back(shuffle);
  spec.outputs = {"shuffle"};
  spec.metadata = {{"model", "espcn"},
                   {"upscale_factor", std::to_string(cfg.r)},
                   {"input_mode", to_string(cfg.input_mode)},
                   {"activation", to_string(cfg.activation)}};
  return spec;
}

}  // namespace survx::sr
