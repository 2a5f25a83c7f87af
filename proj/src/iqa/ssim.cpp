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

#include "survx/iqa/ssim.hpp"

#include <cmath>

namespace survx::iqa {

namespace {

// Separable weighted window sums over every valid position.
std::vector<double> window_filter(const std::vector<double>& in, int h, int w, const std::vector<double>& taps) {
  const int k = static_cast<int>(taps.size());
  const int oh = h - k + 1, ow = w - k + 1;
  std::vector<double> rows(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int j = 0; j < k; ++j) acc += taps[j] * in[static_cast<std::size_t>(y) * w + x + j];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += taps[i] * rows[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

std::vector<double> gaussian_taps(int size, double sigma) {
  std::vector<double> taps(static_cast<std::size_t>(size));
  const double center = (size - 1) / 2.0;
  double total = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - center;
    taps[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

SsimResult ssim(const ImageTensor& x, const ImageTensor& y, const SsimParams& p) {
  if (!x.same_shape(y)) throw IqaError(IqaErrc::kDimMismatch, "ssim: image dimensions differ");
  if (x.channels() != 1) throw IqaError(IqaErrc::kDimMismatch, "ssim: expects single-channel images");
  if (x.height() < p.window || x.width() < p.window) {
    throw IqaError(IqaErrc::kTooSmall, "ssim: image smaller than the " + std::to_string(p.window) + "px window");
  }
  const int h = x.height(), w = x.width();
  const auto taps = gaussian_taps(p.window, p.sigma);
  const auto& a = x.samples();
  const auto& b = y.samples();
  std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const auto mu_a = window_filter(a, h, w, taps);
  const auto mu_b = window_filter(b, h, w, taps);
  const auto e_aa = window_filter(aa, h, w, taps);
  const auto e_bb = window_filter(bb, h, w, taps);
  const auto e_ab = window_filter(ab, h, w, taps);

  SsimResult r;
  r.map_height = h - p.window + 1;
  r.map_width = w - p.window + 1;
  r.map.resize(mu_a.size());
  const double c1 = p.c1(), c2 = p.c2();
  double total = 0.0;
  for (std::size_t i = 0; i < r.map.size(); ++i) {
    const double ma = mu_a[i], mb = mu_b[i];
    const double var_a = e_aa[i] - ma * ma;
    const double var_b = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    r.map[i] = ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
    total += r.map[i];
  }
  r.score = total / static_cast<double>(r.map.size());
  return r;
}

SsimResult ssim_image(const ImageTensor& x, const ImageTensor& y, const SsimParams& p) {
  if (!x.same_shape(y)) throw IqaError(IqaErrc::kDimMismatch, "ssim: image dimensions differ");
  return ssim(to_luma(x), to_luma(y), p);
}

}  // namespace survx::iqa
