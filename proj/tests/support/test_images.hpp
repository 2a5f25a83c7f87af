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
#include <string>
#include <vector>

#include "survx/image.hpp"

namespace survx::testing {

ImageTensor random_image(int channels, int height, int width, std::uint64_t seed);

// Smooth shading, hard edges and a little fine detail; RGB.
ImageTensor natural_image(int height, int width);

// Five periodic or quasi-periodic RGB textures of the given size.
struct NamedTexture {
  std::string name;
  ImageTensor image;
};
std::vector<NamedTexture> standard_textures(int size);

// Wrap-around translation: out(y, x) = in((y - dy) mod H, (x - dx) mod W).
ImageTensor cyclic_shift(const ImageTensor& img, int dy, int dx);

// img + sigma * n, clamped, where n is a fixed standard normal field per seed.
ImageTensor add_gaussian_noise(const ImageTensor& img, double sigma, std::uint64_t seed);

std::vector<double> random_values(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

class TempDir {
 public:
  explicit TempDir(const std::string& prefix);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace survx::testing
