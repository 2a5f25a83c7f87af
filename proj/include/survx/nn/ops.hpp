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

#include "survx/nn/tensor.hpp"

namespace survx::nn {

// Cross-correlation with zero padding. input [C,H,W], weight [K,C,kh,kw],
// bias [K] or empty. Output [K, (H+2p-kh)/s+1, (W+2p-kw)/s+1].
Tensor conv2d(const Tensor& input, const Tensor& weight, const Tensor& bias, int stride, int padding);

struct ConvGrads {
  Tensor input;
  Tensor weight;
  Tensor bias;
};
ConvGrads conv2d_backward(const Tensor& input, const Tensor& weight, int stride, int padding,
                          const Tensor& grad_output);

// [C*r*r, H, W] -> [C, rH, rW]:
// out[c][y][x] = in[c*r*r + (y%r)*r + (x%r)][y/r][x/r].
Tensor pixel_shuffle(const Tensor& input, int r);
// Exact inverse of pixel_shuffle; also its gradient.
Tensor pixel_unshuffle(const Tensor& input, int r);

enum class Activation { kRelu, kLeakyRelu, kPrelu, kTanh, kSigmoid };

// slope: leaky_relu takes a scalar (1 element); prelu takes one value per
// channel of a [C,H,W] input. Ignored for the others.
Tensor apply_activation(const Tensor& input, Activation kind, const Tensor& slope);
Tensor apply_activation(const Tensor& input, Activation kind, double slope = 0.0);

struct ActivationGrads {
  Tensor input;
  Tensor slope;  // prelu only
};
ActivationGrads activation_backward(const Tensor& input, const Tensor& output, Activation kind,
                                    const Tensor& slope, const Tensor& grad_output);

// y = gamma * (x - mean) / sqrt(var + eps) + beta, per channel.
Tensor batchnorm_inference(const Tensor& input, const Tensor& gamma, const Tensor& beta,
                           const Tensor& mean, const Tensor& var, double eps);
struct BatchNormGrads {
  Tensor input;
  Tensor gamma;
  Tensor beta;
};
BatchNormGrads batchnorm_backward(const Tensor& input, const Tensor& gamma, const Tensor& mean,
                                  const Tensor& var, double eps, const Tensor& grad_output);

Tensor add(const Tensor& a, const Tensor& b);

// 2x2 window, stride 2, floor on odd sizes.
Tensor maxpool2(const Tensor& input);
Tensor maxpool2_backward(const Tensor& input, const Tensor& grad_output);

// [C,H,W] -> [C,1,1]
Tensor global_mean(const Tensor& input);
Tensor global_mean_backward(const Tensor& input, const Tensor& grad_output);

// Flattens input to [in,1,1] and applies a 1x1 convolution with weight
// [out,in] reshaped to [out,in,1,1]. Output [out,1,1].
Tensor dense(const Tensor& input, const Tensor& weight, const Tensor& bias);
ConvGrads dense_backward(const Tensor& input, const Tensor& weight, const Tensor& grad_output);

}  // namespace survx::nn
