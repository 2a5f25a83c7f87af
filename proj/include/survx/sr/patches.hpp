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

#include <span>
#include <vector>

#include "survx/image.hpp"

namespace survx::sr {

inline constexpr int kPatchSize = 17;

// LR stride 17 - sum(f mod 2) and HR stride r times that.
struct PatchStrides {
  int lr;
  int hr;
};
PatchStrides patch_strides(std::span<const int> kernel_sizes, int r);

struct PatchPair {
  ImageTensor lr;  // 17 x 17
  ImageTensor hr;  // 17r x 17r
  int lr_y = 0;    // origin in the LR image
  int lr_x = 0;
  int hr_y = 0;    // origin in the HR image
  int hr_x = 0;
};

// Ground-truth region a patch owns: the stride x stride block (in HR pixels,
// stride*r on a side) at the patch origin. Owned regions of all patches are
// pairwise disjoint and tile a contiguous block from the image origin.
struct OwnedRegion {
  int y0, x0, y1, x1;
};
OwnedRegion owned_region(const PatchPair& p, const PatchStrides& strides);

// Crops hr to a multiple of r, degrades it by r, then cuts aligned LR/HR
// patch pairs on the stride grid. Images smaller than 17r in either
// dimension yield an empty list and a warning on stderr.
std::vector<PatchPair> extract_training_patches(const ImageTensor& hr, int r,
                                                std::span<const int> kernel_sizes);

}  // namespace survx::sr
