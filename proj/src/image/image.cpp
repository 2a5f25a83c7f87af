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

#include "survx/image.hpp"

#include <algorithm>
#include <cmath>

namespace survx {

namespace {

void check_shape(int channels, int height, int width, std::size_t count) {
  if (channels < 1 || height < 1 || width < 1) {
    throw ImageError(ImageErrc::kInvalidImage, "image dimensions must be positive");
  }
  const std::size_t expected = static_cast<std::size_t>(channels) * height * width;
  if (count != expected) {
    throw ImageError(ImageErrc::kInvalidImage,
                     "sample count " + std::to_string(count) + " does not match " +
                         std::to_string(channels) + "x" + std::to_string(height) + "x" +
                         std::to_string(width));
  }
}

}  // namespace

ImageTensor::ImageTensor(int channels, int height, int width, std::vector<double> samples)
    : channels_(channels), height_(height), width_(width), samples_(std::move(samples)) {
  check_shape(channels, height, width, samples_.size());
  for (double s : samples_) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw ImageError(ImageErrc::kInvalidImage, "sample outside [0,1]: " + std::to_string(s));
    }
  }
}

ImageTensor ImageTensor::zeros(int channels, int height, int width) {
  return filled(channels, height, width, 0.0);
}

ImageTensor ImageTensor::filled(int channels, int height, int width, double value) {
  check_shape(channels, height, width, static_cast<std::size_t>(std::max(channels, 0)) *
                                           std::max(height, 0) * std::max(width, 0));
  return ImageTensor(channels, height, width,
                     std::vector<double>(static_cast<std::size_t>(channels) * height * width, value));
}

ImageTensor ImageTensor::from_unclamped(int channels, int height, int width,
                                        std::vector<double> samples) {
  for (double& s : samples) {
    if (std::isfinite(s)) s = std::clamp(s, 0.0, 1.0);
  }
  return ImageTensor(channels, height, width, std::move(samples));
}

ImageTensor ImageTensor::channel(int c) const {
  if (c < 0 || c >= channels_) {
    throw ImageError(ImageErrc::kChannelMismatch, "channel index out of range");
  }
  const auto first = samples_.begin() + static_cast<std::ptrdiff_t>(c * plane_size());
  return ImageTensor(1, height_, width_,
                     std::vector<double>(first, first + static_cast<std::ptrdiff_t>(plane_size())));
}

ImageTensor ImageTensor::crop(int y0, int x0, int height, int width) const {
  if (y0 < 0 || x0 < 0 || height < 1 || width < 1 || y0 + height > height_ || x0 + width > width_) {
    throw ImageError(ImageErrc::kDimMismatch, "crop rectangle outside image");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(channels_) * height * width);
  for (int c = 0; c < channels_; ++c) {
    for (int y = 0; y < height; ++y) {
      const auto row = samples_.begin() + static_cast<std::ptrdiff_t>(index(c, y0 + y, x0));
      out.insert(out.end(), row, row + width);
    }
  }
  return ImageTensor(channels_, height, width, std::move(out));
}

ImageTensor merge_channels(const std::vector<ImageTensor>& planes) {
  if (planes.empty()) throw ImageError(ImageErrc::kChannelMismatch, "no planes to merge");
  const int h = planes.front().height();
  const int w = planes.front().width();
  std::vector<double> out;
  int channels = 0;
  for (const auto& p : planes) {
    if (p.height() != h || p.width() != w) {
      throw ImageError(ImageErrc::kDimMismatch, "planes differ in size");
    }
    out.insert(out.end(), p.samples().begin(), p.samples().end());
    channels += p.channels();
  }
  return ImageTensor(channels, h, w, std::move(out));
}

}  // namespace survx
