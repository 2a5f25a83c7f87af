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

#include <algorithm>

#include "survx/image.hpp"

namespace survx {

namespace {

constexpr double kR = 0.299;
constexpr double kG = 0.587;
constexpr double kB = 0.114;
// Chroma scales: 2 (1 - kB) and 2 (1 - kR).
constexpr double kCbScale = 1.772;
constexpr double kCrScale = 1.402;

void require_rgb(const ImageTensor& img) {
  if (img.channels() != 3) {
    throw ImageError(ImageErrc::kChannelMismatch,
                     "expected 3 channels, got " + std::to_string(img.channels()));
  }
}

}  // namespace

ImageTensor rgb_to_luma(const ImageTensor& rgb) {
  require_rgb(rgb);
  const std::size_t n = rgb.plane_size();
  const auto& s = rgb.samples();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = std::clamp(kR * s[i] + kG * s[n + i] + kB * s[2 * n + i], 0.0, 1.0);
  }
  return ImageTensor(1, rgb.height(), rgb.width(), std::move(y));
}

ImageTensor rgb_to_ycbcr(const ImageTensor& rgb) {
  require_rgb(rgb);
  const std::size_t n = rgb.plane_size();
  const auto& s = rgb.samples();
  std::vector<double> out(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = s[i], g = s[n + i], b = s[2 * n + i];
    const double y = kR * r + kG * g + kB * b;
    out[i] = std::clamp(y, 0.0, 1.0);
    out[n + i] = std::clamp(0.5 + (b - y) / kCbScale, 0.0, 1.0);
    out[2 * n + i] = std::clamp(0.5 + (r - y) / kCrScale, 0.0, 1.0);
  }
  return ImageTensor(3, rgb.height(), rgb.width(), std::move(out));
}

ImageTensor ycbcr_to_rgb(const ImageTensor& ycbcr) {
  require_rgb(ycbcr);
  const std::size_t n = ycbcr.plane_size();
  const auto& s = ycbcr.samples();
  std::vector<double> out(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = s[i], cb = s[n + i] - 0.5, cr = s[2 * n + i] - 0.5;
    const double r = y + kCrScale * cr;
    const double b = y + kCbScale * cb;
    const double g = (y - kR * r - kB * b) / kG;
    out[i] = std::clamp(r, 0.0, 1.0);
    out[n + i] = std::clamp(g, 0.0, 1.0);
    out[2 * n + i] = std::clamp(b, 0.0, 1.0);
  }
  return ImageTensor(3, ycbcr.height(), ycbcr.width(), std::move(out));
}

ImageTensor to_luma(const ImageTensor& img) {
  if (img.channels() == 1) return img;
  return rgb_to_luma(img);
}

}  // namespace survx
