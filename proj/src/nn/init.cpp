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

#include "survx/nn/init.hpp"

#include <cmath>
#include <random>

namespace survx::nn {

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

WeightStore init_weights(const NetworkSpec& spec, std::uint64_t seed) {
  validate(spec);
  std::mt19937_64 rng(seed);
  WeightStore store;
  for (const auto& slot : param_slots(spec)) {
    Tensor t(slot.dims);
    if (ends_with(slot.name, ".weight")) {
      std::size_t fan_in = 1;
      for (std::size_t i = 1; i < slot.dims.size(); ++i) fan_in *= slot.dims[i];
      std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / static_cast<double>(fan_in)));
      for (auto& v : t.values()) v = dist(rng);
    } else if (ends_with(slot.name, ".slope")) {
      t = Tensor(slot.dims, 0.25);
    } else if (ends_with(slot.name, ".gamma") || ends_with(slot.name, ".var")) {
      t = Tensor(slot.dims, 1.0);
    }
    store.set(slot.name, std::move(t));
  }
  return store;
}

WeightStore zero_weights(const NetworkSpec& spec) {
  WeightStore store;
  for (const auto& slot : param_slots(spec)) {
    store.set(slot.name, Tensor(slot.dims, ends_with(slot.name, ".var") ? 1.0 : 0.0));
  }
  return store;
}

}  // namespace survx::nn
