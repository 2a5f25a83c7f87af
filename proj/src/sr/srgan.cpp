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

constexpr int kFeatures = 64;

struct Builder {
  nn::NetworkSpec spec;

  std::string conv(const std::string& name, const std::string& in, int kernel, int in_c, int out_c,
                          int stride = 1) {
    nn::Node n{name, nn::OpKind::kConv2d, {}, {in}};
    n.params.kernel = kernel;
    n.params.in_channels = in_c;
    n.params.out_channels = out_c;
    n.params.stride = stride;
    n.params.padding = kernel / 2;
    return push(std::move(n));
  }
  std::string channelwise(const std::string& name, nn::OpKind kind, const std::string& in, int c) {
    nn::Node n{name, kind, {}, {in}};
    n.params.in_channels = c;
    return push(std::move(n));
  }
  std::string leaky(const std::string& name, const std::string& in) {
    nn::Node n{name, nn::OpKind::kLeakyRelu, {}, {in}};
    n.params.slope = 0.2;
    return push(std::move(n));
  }
  std::string shuffle(const std::string& name, const std::string& in, int r) {
    nn::Node n{name, nn::OpKind::kPixelShuffle, {}, {in}};
    n.params.factor = r;
    return push(std::move(n));
  }
  std::string add(const std::string& name, const std::string& a, const std::string& b) {
    return push(nn::Node{name, nn::OpKind::kAdd, {}, {a, b}});
  }
  std::string dense(const std::string& name, const std::string& in, int in_f, int out_f) {
    nn::Node n{name, nn::OpKind::kDense, {}, {in}};
    n.params.in_channels = in_f;
    n.params.out_channels = out_f;
    return push(std::move(n));
  }
  std::string push(nn::Node n) {
    spec.nodes.push_back(std::move(n));
    return spec.nodes.back().name;
  }
};

}  // namespace

nn::NetworkSpec build_srgan_generator(int residual_blocks, int r, int channels) {
  if (r != 2 && r != 4) {
    throw SrError(SrErrc::kUnsupportedFactor, "SRGAN generator supports r in {2,4}, got " + std::to_string(r));
  }
  if (residual_blocks < 0) throw SrError(SrErrc::kInvalidConfig, "residual block count must be >= 0");
  Builder b;
  b.spec.input_channels = channels;

  b.conv("head_conv", "input", 9, channels, kFeatures);
  const std::string head = b.channelwise("head_prelu", nn::OpKind::kPrelu, "head_conv", kFeatures);
  std::string x = head;
  for (int i = 0; i < residual_blocks; ++i) {
    const std::string p = "block" + std::to_string(i) + ".";
    const std::string block_in = x;
    b.conv(p + "conv_a", block_in, 3, kFeatures, kFeatures);
    b.channelwise(p + "bn_a", nn::OpKind::kBatchNormInference, p + "conv_a", kFeatures);
    b.channelwise(p + "prelu", nn::OpKind::kPrelu, p + "bn_a", kFeatures);
    b.conv(p + "conv_b", p + "prelu", 3, kFeatures, kFeatures);
    b.channelwise(p + "bn_b", nn::OpKind::kBatchNormInference, p + "conv_b", kFeatures);
    x = b.add(p + "add", p + "bn_b", block_in);
  }
  b.conv("post_conv", x, 3, kFeatures, kFeatures);
  b.channelwise("post_bn", nn::OpKind::kBatchNormInference, "post_conv", kFeatures);
  x = b.add("post_add", "post_bn", head);

  const int stages = r == 4 ? 2 : 1;
  for (int s = 0; s < stages; ++s) {
    const std::string p = "up" + std::to_string(s) + ".";
    b.conv(p + "conv", x, 3, kFeatures, kFeatures * 4);
    b.shuffle(p + "shuffle", p + "conv", 2);
    x = b.channelwise(p + "prelu", nn::OpKind::kPrelu, p + "shuffle", kFeatures);
  }
  b.conv("tail_conv", x, 9, kFeatures, channels);
  b.spec.outputs = {"tail_conv"};
  b.spec.metadata = {{"model", "srgan_generator"},
                     {"upscale_factor", std::to_string(r)},
                     {"residual_blocks", std::to_string(residual_blocks)},
                     {"input_mode", channels == 1 ? "luma" : "rgb"}};
  return b.spec;
}

nn::NetworkSpec build_srgan_discriminator(int height, int width, int channels) {
  constexpr int kWidths[8] = {64, 64, 128, 128, 256, 256, 512, 512};
  Builder b;
  b.spec.input_channels = channels;
  std::string x = "input";
  int in_c = channels;
  int h = height, w = width;
  for (int i = 0; i < 8; ++i) {
    const std::string p = "d" + std::to_string(i + 1) + ".";
    const int stride = (i % 2 == 1) ? 2 : 1;
    x = b.conv(p + "conv", x, 3, in_c, kWidths[i], stride);
    if (i > 0) x = b.channelwise(p + "bn", nn::OpKind::kBatchNormInference, x, kWidths[i]);
    x = b.leaky(p + "lrelu", x);
    in_c = kWidths[i];
    if (stride == 2) {
      h = (h - 1) / 2 + 1;
      w = (w - 1) / 2 + 1;
    }
  }
  b.dense("fc1", x, in_c * h * w, 1024);
  b.leaky("fc1_lrelu", "fc1");
  b.dense("fc2", "fc1_lrelu", 1024, 1);
  nn::Node sig{"prob", nn::OpKind::kSigmoid, {}, {"fc2"}};
  b.push(std::move(sig));
  b.spec.outputs = {"prob"};
  b.spec.metadata = {{"model", "srgan_discriminator"}};
  return b.spec;
}

}  // namespace survx::sr
