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

#include "survx/nn/network.hpp"

namespace survx::nn {

// NNWB container, little-endian:
//   "NNWB" | version u32 (=1) | tensor_count u32
//   per tensor: name_len u16 | UTF-8 name | rank u8 | dims u32 x rank | f32 values
// Tensors are written in name order.
inline constexpr std::uint32_t kWeightFormatVersion = 1;

std::vector<std::uint8_t> save_weights(const WeightStore& store);
WeightStore load_weights(std::span<const std::uint8_t> bytes);

void save_weights_file(const std::filesystem::path& path, const WeightStore& store);
WeightStore load_weights_file(const std::filesystem::path& path);

// Spec JSON at <stem>.json paired with weights at <stem>.nnwb.
struct ModelBundle {
  NetworkSpec spec;
  WeightStore weights;
};
void save_bundle(const std::filesystem::path& stem, const ModelBundle& bundle);
ModelBundle load_bundle(const std::filesystem::path& stem);

}  // namespace survx::nn
