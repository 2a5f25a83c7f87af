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

#include "survx/sr/upscale.hpp"

#include "survx/nn/graph.hpp"
#include "survx/resample.hpp"
#include "survx/sr/trainer.hpp"

namespace survx::sr {

namespace {

void check_bundle(const nn::ModelBundle& bundle) {
  try {
    nn::validate(bundle.spec);
    nn::validate_weights(bundle.spec, bundle.weights);
  } catch (const nn::NnError& e) {
    throw SrError(SrErrc::kWeightMismatch, e.what());
  }
}

ImageTensor run_network(const ImageTensor& img, const nn::ModelBundle& bundle, int r) {
  const nn::Tensor out = nn::run(bundle.spec, bundle.weights, image_to_tensor(img));
  const nn::Chw s = nn::chw_of(out);
  if (s.c != static_cast<std::size_t>(img.channels()) || s.h != static_cast<std::size_t>(img.height()) * r ||
      s.w != static_cast<std::size_t>(img.width()) * r) {
    throw SrError(SrErrc::kWeightMismatch, "network output " + nn::dims_to_string(out.dims()) +
                                                " is not " + std::to_string(r) + "x the input");
  }
  return tensor_to_image(out);
}

}  // namespace

int bundle_upscale_factor(const nn::ModelBundle& bundle) {
  auto it = bundle.spec.metadata.find("upscale_factor");
  if (it != bundle.spec.metadata.end()) return std::stoi(it->second);
  constexpr std::size_t kProbe = 32;
  const auto shapes =
      nn::infer_shapes(bundle.spec, {static_cast<std::size_t>(bundle.spec.input_channels), kProbe, kProbe});
  const auto& out = shapes[static_cast<std::size_t>(bundle.spec.node_index(bundle.spec.outputs.front()))];
  return static_cast<int>(out[1] / kProbe);
}

InputMode bundle_input_mode(const nn::ModelBundle& bundle) {
  return bundle.spec.input_channels == 1 ? InputMode::kLuma : InputMode::kRgb;
}

ImageTensor upscale_ycbcr(const ImageTensor& rgb, const nn::ModelBundle& bundle) {
  check_bundle(bundle);
  if (bundle_input_mode(bundle) != InputMode::kLuma) {
    throw SrError(SrErrc::kWeightMismatch, "upscale_ycbcr needs a luma-mode network");
  }
  const int r = bundle_upscale_factor(bundle);
  const ImageTensor ycc = rgb_to_ycbcr(rgb);
  return merge_channels({run_network(ycc.channel(0), bundle, r), upscale_bicubic(ycc.channel(1), r),
                         upscale_bicubic(ycc.channel(2), r)});
}

ImageTensor upscale(const ImageTensor& img, const nn::ModelBundle& bundle) {
  check_bundle(bundle);
  const int r = bundle_upscale_factor(bundle);
  const InputMode mode = bundle_input_mode(bundle);
  if (mode == InputMode::kRgb) {
    if (img.channels() != 3) throw SrError(SrErrc::kWeightMismatch, "RGB network needs a 3-channel image");
    return run_network(img, bundle, r);
  }
  if (img.channels() == 1) return run_network(img, bundle, r);
  return ycbcr_to_rgb(upscale_ycbcr(img, bundle));
}

}  // namespace survx::sr
