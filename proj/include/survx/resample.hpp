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
#include <vector>

#include "survx/image.hpp"

namespace survx {

enum class ResampleErrc { kDegenerateTarget, kNotDivisible };

class ResampleError : public std::runtime_error {
 public:
  ResampleError(ResampleErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ResampleErrc code() const noexcept { return code_; }

 private:
  ResampleErrc code_;
};

struct ResampleSpec {
  int out_height = 0;
  int out_width = 0;
  // Only takes effect when an axis is downscaled.
  bool antialias = true;
  double kernel_a = -0.5;
};

// Keys cubic convolution kernel with parameter a.
double cubic_kernel(double t, double a = -0.5) noexcept;

// Taps contributing to one output sample along an axis. Indices are already
// clamped to [0, in_size); weights sum to 1.
struct AxisContribution {
  std::vector<int> indices;
  std::vector<double> weights;
};

// Per-output-index contributions for resampling an axis of in_size samples
// to out_size samples. Output i maps to source coordinate (i+0.5)/s - 0.5
// with s = out_size / in_size; when downscaling with antialias the kernel is
// stretched by 1/s.
std::vector<AxisContribution> axis_contributions(int in_size, int out_size, bool antialias,
                                                 double kernel_a);

// One separable pass over planar data [channels][height][width]. Values are
// not clamped. Returns data with the resampled axis replaced by out_size.
enum class Axis { kHorizontal, kVertical };
std::vector<double> resample_axis(const std::vector<double>& data, int channels, int height,
                                  int width, Axis axis, int out_size, bool antialias,
                                  double kernel_a);

// Horizontal pass, then vertical pass, then clamp to [0,1].
ImageTensor resize(const ImageTensor& img, const ResampleSpec& spec);

// Antialiased bicubic reduction by an integer factor; dimensions must divide.
ImageTensor degrade(const ImageTensor& hr, int factor);
ImageTensor degrade_x4(const ImageTensor& hr);

// Bicubic enlargement by an integer factor.
ImageTensor upscale_bicubic(const ImageTensor& lr, int factor);

// Crops the bottom/right edges so both dimensions are multiples of factor.
ImageTensor crop_to_multiple(const ImageTensor& img, int factor);

}  // namespace survx
