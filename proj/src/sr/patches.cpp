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

#include "survx/sr/patches.hpp"

#include <iostream>

#include "survx/resample.hpp"
#include "survx/sr/models.hpp"

namespace survx::sr {

PatchStrides patch_strides(std::span<const int> kernel_sizes, int r) {
  int odd = 0;
  for (int f : kernel_sizes) odd += f % 2;
  const int lr = kPatchSize - odd;
  if (lr < 1) throw SrError(SrErrc::kInvalidConfig, "kernel list leaves no patch stride");
  return {lr, lr * r};
}

OwnedRegion owned_region(const PatchPair& p, const PatchStrides& strides) {
  return {p.hr_y, p.hr_x, p.hr_y + strides.hr, p.hr_x + strides.hr};
}

std::vector<PatchPair> extract_training_patches(const ImageTensor& hr, int r, std::span<const int> kernel_sizes) {
  if (r < 1) throw SrError(SrErrc::kUnsupportedFactor, "upscale factor must be >= 1");
  const int hr_patch = kPatchSize * r;
  if (hr.height() < hr_patch || hr.width() < hr_patch) {
    std::cerr << "warning: image " << hr.height() << "x" << hr.width() << " is smaller than one " << hr_patch
              << "x" << hr_patch << " training patch; skipped\n";
    return {};
  }
  const PatchStrides strides = patch_strides(kernel_sizes, r);
  const ImageTensor ground_truth = crop_to_multiple(hr, r);
  const ImageTensor lr = degrade(ground_truth, r);

  std::vector<PatchPair> out;
  for (int y = 0; y + kPatchSize <= lr.height(); y += strides.lr) {
    for (int x = 0; x + kPatchSize <= lr.width(); x += strides.lr) {
      out.push_back(PatchPair{lr.crop(y, x, kPatchSize, kPatchSize),
                              ground_truth.crop(y * r, x * r, hr_patch, hr_patch), y, x, y * r, x * r});
    }
  }
  return out;
}

}  // namespace survx::sr
