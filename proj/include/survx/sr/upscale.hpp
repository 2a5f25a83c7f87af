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

#include "survx/image.hpp"
#include "survx/nn/weights.hpp"
#include "survx/sr/models.hpp"

namespace survx::sr {

// Upscale factor recorded in the bundle metadata, or derived from the
// network's shape law on a probe input when absent.
int bundle_upscale_factor(const nn::ModelBundle& bundle);
InputMode bundle_input_mode(const nn::ModelBundle& bundle);

// Luma-mode networks (1 input channel) upscale Y; a 3-channel image has its
// Cb/Cr planes enlarged bicubically and is converted back to RGB. RGB-mode
// networks consume all three channels. Output is clamped to [0,1] and is
// r times the input in each dimension.
ImageTensor upscale(const ImageTensor& img, const nn::ModelBundle& bundle);

// Luma-mode route on a 3-channel image, stopping before the RGB conversion:
// channel 0 is the network's Y, channels 1-2 the bicubic Cb/Cr.
ImageTensor upscale_ycbcr(const ImageTensor& rgb, const nn::ModelBundle& bundle);

}  // namespace survx::sr
