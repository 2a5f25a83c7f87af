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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "survx/image.hpp"

namespace survx {

enum class ImageFormat { kPpm, kPng };

using Bytes = std::vector<std::uint8_t>;

// Detects PNG or binary PNM (P6 color, P5 gray) from the magic bytes.
ImageTensor decode_image(std::span<const std::uint8_t> bytes);

// Quantizes each sample to round(v*255), clamped to [0,255]. kPpm writes P6
// for 3-channel images and P5 for 1-channel images.
Bytes encode_image(const ImageTensor& img, ImageFormat format);

// 8-bit quantization as applied by encode_image, without producing a file.
ImageTensor quantize_8bit(const ImageTensor& img);
std::uint8_t quantize_sample(double v) noexcept;

// Extension-driven codec selection: .png, .ppm/.pnm/.pgm.
ImageFormat format_for_path(const std::filesystem::path& path);
ImageTensor read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const ImageTensor& img);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace survx
