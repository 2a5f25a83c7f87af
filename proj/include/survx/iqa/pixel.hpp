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

#include "survx/image.hpp"
#include "survx/iqa/common.hpp"

namespace survx::iqa {

struct MsePsnr {
  double mse = 0.0;
  double psnr = 0.0;  // dB for peak 1.0; +infinity when mse == 0
};

MsePsnr mse_psnr(const ImageTensor& x, const ImageTensor& y);

}  // namespace survx::iqa
