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

#include "survx/iqa/pixel.hpp"

#include <cmath>
#include <limits>

namespace survx::iqa {

MsePsnr mse_psnr(const ImageTensor& x, const ImageTensor& y) {
  if (!x.same_shape(y)) throw IqaError(IqaErrc::kDimMismatch, "mse_psnr: image dimensions differ");
  double acc = 0.0;
  const auto& a = x.samples();
  const auto& b = y.samples();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  MsePsnr r;
  r.mse = acc / static_cast<double>(a.size());
  r.psnr = r.mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / r.mse);
  return r;
}

}  // namespace survx::iqa
