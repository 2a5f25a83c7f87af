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
#include <string>
#include <vector>

namespace survx::testing {

// Rater ids r00.., image ids img00..; method k is rated around 2 + k
// (clamped to 1..5), with seeded per-rating jitter of at most one step.
std::string synthetic_mos_csv(int images, int raters, const std::vector<std::string>& methods, std::uint64_t seed);

}  // namespace survx::testing
