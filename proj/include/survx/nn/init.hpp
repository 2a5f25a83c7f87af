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

#include "survx/nn/network.hpp"

namespace survx::nn {

// He-normal conv/dense weights (std = sqrt(2 / fan_in)), zero biases,
// PReLU slopes 0.25, identity batch-norm statistics. Deterministic per seed.
WeightStore init_weights(const NetworkSpec& spec, std::uint64_t seed);

// Every parameter set to zero except batch-norm variances (1).
WeightStore zero_weights(const NetworkSpec& spec);

}  // namespace survx::nn
