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

#include "survx/resample.hpp"

#include <algorithm>
#include <cmath>

namespace survx {

double cubic_kernel(double t, double a) noexcept {
  const double x = std::abs(t);
  const double x2 = x * x;
  const double x3 = x2 * x;
  if (x <= 1.0) return (a + 2.0) * x3 - (a + 3.0) * x2 + 1.0;
  if (x < 2.0) return a * x3 - 5.0 * a * x2 + 8.0 * a * x - 4.0 * a;
  return 0.0;
}

std::vector<AxisContribution> axis_contributions(int in_size, int out_size, bool antialias,
                                                 double kernel_a) {
  if (in_size < 1 || out_size < 1) {
    throw ResampleError(ResampleErrc::kDegenerateTarget, "resample axis sizes must be positive");
  }
  const double scale = static_cast<double>(out_size) / in_size;
  const bool stretch = antialias && scale < 1.0;
  const double kernel_scale = stretch ? scale : 1.0;
  const double kernel_width = 4.0 / kernel_scale;
  const int taps = static_cast<int>(std::ceil(kernel_width)) + 2;

  std::vector<AxisContribution> out(out_size);
  for (int i = 0; i < out_size; ++i) {
    const double center = (i + 0.5) / scale - 0.5;
    const int left = static_cast<int>(std::floor(center - kernel_width / 2.0));
    AxisContribution& contrib = out[i];
    double total = 0.0;
    for (int k = 0; k < taps; ++k) {
      const int j = left + k;
      const double w = kernel_scale * cubic_kernel(kernel_scale * (center - j), kernel_a);
      if (w == 0.0) continue;
      const int clamped = std::clamp(j, 0, in_size - 1);
      // Merge taps that clamp onto the same edge sample.
      if (!contrib.indices.empty() && contrib.indices.back() == clamped) {
        contrib.weights.back() += w;
      } else {
        contrib.indices.push_back(clamped);
        contrib.weights.push_back(w);
      }
      total += w;
    }
    for (double& w : contrib.weights) w /= total;
  }
  return out;
}

std::vector<double> resample_axis(const std::vector<double>& data, int channels, int height,
                                  int width, Axis axis, int out_size, bool antialias,
                                  double kernel_a) {
  const bool horizontal = axis == Axis::kHorizontal;
  const int in_size = horizontal ? width : height;
  const auto contribs = axis_contributions(in_size, out_size, antialias, kernel_a);
  const int out_h = horizontal ? height : out_size;
  const int out_w = horizontal ? out_size : width;
  std::vector<double> out(static_cast<std::size_t>(channels) * out_h * out_w);

  for (int c = 0; c < channels; ++c) {
    const double* src = data.data() + static_cast<std::size_t>(c) * height * width;
    double* dst = out.data() + static_cast<std::size_t>(c) * out_h * out_w;
    if (horizontal) {
      for (int y = 0; y < height; ++y) {
        const double* row = src + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < out_w; ++x) {
          const auto& ct = contribs[x];
          double acc = 0.0;
          for (std::size_t k = 0; k < ct.indices.size(); ++k) acc += ct.weights[k] * row[ct.indices[k]];
          dst[static_cast<std::size_t>(y) * out_w + x] = acc;
        }
      }
    } else {
      for (int y = 0; y < out_h; ++y) {
        const auto& ct = contribs[y];
        double* drow = dst + static_cast<std::size_t>(y) * out_w;
        std::fill(drow, drow + out_w, 0.0);
        for (std::size_t k = 0; k < ct.indices.size(); ++k) {
          const double* srow = src + static_cast<std::size_t>(ct.indices[k]) * width;
          const double w = ct.weights[k];
          for (int x = 0; x < out_w; ++x) drow[x] += w * srow[x];
        }
      }
    }
  }
  return out;
}

ImageTensor resize(const ImageTensor& img, const ResampleSpec& spec) {
  if (spec.out_height < 1 || spec.out_width < 1) {
    throw ResampleError(ResampleErrc::kDegenerateTarget,
                        "target size " + std::to_string(spec.out_height) + "x" +
                            std::to_string(spec.out_width) + " is degenerate");
  }
  auto rows = resample_axis(img.samples(), img.channels(), img.height(), img.width(),
                            Axis::kHorizontal, spec.out_width, spec.antialias, spec.kernel_a);
  auto both = resample_axis(rows, img.channels(), img.height(), spec.out_width, Axis::kVertical,
                            spec.out_height, spec.antialias, spec.kernel_a);
  return ImageTensor::from_unclamped(img.channels(), spec.out_height, spec.out_width, std::move(both));
}

ImageTensor degrade(const ImageTensor& hr, int factor) {
  if (factor < 1) throw ResampleError(ResampleErrc::kDegenerateTarget, "factor must be >= 1");
  if (hr.height() % factor != 0 || hr.width() % factor != 0) {
    throw ResampleError(ResampleErrc::kNotDivisible,
                        std::to_string(hr.height()) + "x" + std::to_string(hr.width()) +
                            " is not divisible by " + std::to_string(factor));
  }
  return resize(hr, {hr.height() / factor, hr.width() / factor, true, -0.5});
}

ImageTensor degrade_x4(const ImageTensor& hr) { return degrade(hr, 4); }

ImageTensor upscale_bicubic(const ImageTensor& lr, int factor) {
  if (factor < 1) throw ResampleError(ResampleErrc::kDegenerateTarget, "factor must be >= 1");
  return resize(lr, {lr.height() * factor, lr.width() * factor, true, -0.5});
}

ImageTensor crop_to_multiple(const ImageTensor& img, int factor) {
  const int h = img.height() - img.height() % factor;
  const int w = img.width() - img.width() % factor;
  if (h < 1 || w < 1) {
    throw ResampleError(ResampleErrc::kDegenerateTarget, "image smaller than the factor");
  }
  if (h == img.height() && w == img.width()) return img;
  return img.crop(0, 0, h, w);
}

}  // namespace survx
