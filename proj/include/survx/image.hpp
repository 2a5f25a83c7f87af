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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace survx {

enum class ImageErrc {
  kInvalidImage,
  kMalformedFile,
  kUnsupportedFormat,
  kUnsupportedChannelCount,
  kChannelMismatch,
  kDimMismatch,
  kIo,
};

class ImageError : public std::runtime_error {
 public:
  ImageError(ImageErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ImageErrc code() const noexcept { return code_; }

 private:
  ImageErrc code_;
};

// Planar image, samples normalized to [0,1]. Layout is channel-major:
// sample(c, y, x) = samples[c*H*W + y*W + x].
class ImageTensor {
 public:
  ImageTensor() = default;

  // Validates shape and range; throws ImageError(kInvalidImage).
  ImageTensor(int channels, int height, int width, std::vector<double> samples);

  // Zero-filled image.
  static ImageTensor zeros(int channels, int height, int width);
  static ImageTensor filled(int channels, int height, int width, double value);

  // Clamps every sample into [0,1] before validating. Non-finite samples are
  // still rejected.
  static ImageTensor from_unclamped(int channels, int height, int width, std::vector<double> samples);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t plane_size() const noexcept { return static_cast<std::size_t>(height_) * width_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  double at(int c, int y, int x) const { return samples_[index(c, y, x)]; }
  std::size_t index(int c, int y, int x) const noexcept {
    return static_cast<std::size_t>(c) * plane_size() + static_cast<std::size_t>(y) * width_ + x;
  }

  const std::vector<double>& samples() const noexcept { return samples_; }

  // Single channel as a 1-channel image.
  ImageTensor channel(int c) const;
  // Rectangular crop, all channels.
  ImageTensor crop(int y0, int x0, int height, int width) const;

  bool same_shape(const ImageTensor& other) const noexcept {
    return channels_ == other.channels_ && height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

 private:
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> samples_;
};

// Stack 1-channel images into one multi-channel image.
ImageTensor merge_channels(const std::vector<ImageTensor>& planes);

// Rec.601 luma: 0.299 R + 0.587 G + 0.114 B.
ImageTensor rgb_to_luma(const ImageTensor& rgb);

// Full-range YCbCr with chroma centered at 0.5. Channels: Y, Cb, Cr.
ImageTensor rgb_to_ycbcr(const ImageTensor& rgb);
ImageTensor ycbcr_to_rgb(const ImageTensor& ycbcr);

// 1-channel images pass through; 3-channel images go through rgb_to_luma.
ImageTensor to_luma(const ImageTensor& img);

}  // namespace survx
