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

#include <vector>

#include "survx/image.hpp"
#include "survx/iqa/common.hpp"

namespace survx::iqa {

struct SsimParams {
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
  int window = 11;
  double sigma = 1.5;

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }
};

struct SsimResult {
  double score = 0.0;
  int map_height = 0;
  int map_width = 0;
  std::vector<double> map;  // one value per valid window position
};

// Normalized 1-D Gaussian taps; the 2-D window is their outer product.
std::vector<double> gaussian_taps(int size, double sigma);

// Single-channel SSIM over every fully contained window (no padding).
SsimResult ssim(const ImageTensor& x, const ImageTensor& y, const SsimParams& p = {});

// Converts 3-channel inputs to luma first.
SsimResult ssim_image(const ImageTensor& x, const ImageTensor& y, const SsimParams& p = {});

}  // namespace survx::iqa
