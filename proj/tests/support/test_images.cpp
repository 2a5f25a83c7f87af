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

#include "test_images.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace survx::testing {

ImageTensor random_image(int channels, int height, int width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> s(static_cast<std::size_t>(channels) * height * width);
  for (auto& v : s) v = dist(rng);
  return ImageTensor(channels, height, width, std::move(s));
}

std::vector<double> random_values(std::size_t n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

ImageTensor natural_image(int height, int width) {
  std::vector<double> s(static_cast<std::size_t>(3) * height * width);
  const double pi = std::numbers::pi;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = static_cast<double>(x) / width;
      const double v = static_cast<double>(y) / height;
      double base = 0.35 + 0.3 * u + 0.15 * std::sin(2 * pi * v * 1.5);
      const double dx = u - 0.62;
      const double dy = v - 0.4;
      if (dx * dx + dy * dy < 0.05) base = 0.85 - 0.4 * (dx * dx + dy * dy) / 0.05;
      if (u > 0.1 && u < 0.35 && v > 0.55 && v < 0.9) base = 0.15 + 0.05 * std::sin(2 * pi * 6 * u);
      const double detail = 0.04 * std::sin(2 * pi * (7 * u + 5 * v)) * std::cos(2 * pi * 9 * v);
      const double l = base + detail;
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      const std::size_t plane = static_cast<std::size_t>(height) * width;
      s[i] = std::clamp(l * 1.05, 0.0, 1.0);
      s[plane + i] = std::clamp(l * 0.95 + 0.02, 0.0, 1.0);
      s[2 * plane + i] = std::clamp(l * 0.8 + 0.1 * v, 0.0, 1.0);
    }
  }
  return ImageTensor(3, height, width, std::move(s));
}

namespace {

ImageTensor from_gray(int size, const std::vector<double>& g, double tint) {
  std::vector<double> s;
  s.reserve(3 * g.size());
  for (double v : g) s.push_back(std::clamp(v, 0.0, 1.0));
  for (double v : g) s.push_back(std::clamp(v * (1.0 - tint) + tint * 0.5, 0.0, 1.0));
  for (double v : g) s.push_back(std::clamp(v * (1.0 - 2 * tint) + tint, 0.0, 1.0));
  return ImageTensor(3, size, size, std::move(s));
}

}  // namespace

std::vector<NamedTexture> standard_textures(int size) {
  const double pi = std::numbers::pi;
  const std::size_t n = static_cast<std::size_t>(size) * size;
  std::vector<NamedTexture> out;

  std::vector<double> g(n);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) g[static_cast<std::size_t>(y) * size + x] = 0.5 + 0.4 * std::sin(2 * pi * (x + 0.5 * y) / 8.0);
  }
  out.push_back({"stripes", from_gray(size, g, 0.1)});

  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) g[static_cast<std::size_t>(y) * size + x] = ((x / 4 + y / 4) % 2) ? 0.8 : 0.2;
  }
  out.push_back({"checker", from_gray(size, g, 0.2)});

  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = (x % 8) - 3.5;
      const double dy = (y % 8) - 3.5;
      g[static_cast<std::size_t>(y) * size + x] = dx * dx + dy * dy < 6.0 ? 0.9 : 0.25;
    }
  }
  out.push_back({"dots", from_gray(size, g, 0.15)});

  // Box-filtered white noise with wrap-around, hence periodic.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> raw(n);
  for (auto& v : raw) v = dist(rng);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      double acc = 0.0;
      for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
          acc += raw[static_cast<std::size_t>((y + i + size) % size) * size + (x + j + size) % size];
        }
      }
      g[static_cast<std::size_t>(y) * size + x] = 0.1 + 0.8 * (acc / 9.0 - 0.2) / 0.6;
    }
  }
  out.push_back({"noise", from_gray(size, g, 0.05)});

  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double a = std::sin(2 * pi * x / 16.0);
      const double b = std::sin(2 * pi * y / 16.0);
      const bool over = ((x / 8) + (y / 8)) % 2 == 0;
      g[static_cast<std::size_t>(y) * size + x] = 0.5 + 0.35 * (over ? a : b);
    }
  }
  out.push_back({"weave", from_gray(size, g, 0.25)});
  return out;
}

ImageTensor cyclic_shift(const ImageTensor& img, int dy, int dx) {
  const int h = img.height();
  const int w = img.width();
  std::vector<double> s(img.size());
  for (int c = 0; c < img.channels(); ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int sy = ((y - dy) % h + h) % h;
        const int sx = ((x - dx) % w + w) % w;
        s[img.index(c, y, x)] = img.at(c, sy, sx);
      }
    }
  }
  return ImageTensor(img.channels(), h, w, std::move(s));
}

ImageTensor add_gaussian_noise(const ImageTensor& img, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> s = img.samples();
  for (auto& v : s) v += sigma * dist(rng);
  return ImageTensor::from_unclamped(img.channels(), img.height(), img.width(), std::move(s));
}

TempDir::TempDir(const std::string& prefix) {
  std::random_device rd;
  const auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = base / (prefix + "-" + std::to_string(rd()));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace survx::testing
