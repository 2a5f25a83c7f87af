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

#include "survx/nn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace survx::nn {

std::size_t element_count(const Dims& dims) noexcept {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::string dims_to_string(const Dims& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

Tensor::Tensor(Dims dims, double fill) : dims_(std::move(dims)) {
  if (dims_.empty() || dims_.size() > 4) {
    throw NnError(NnErrc::kShapeMismatch, "tensor rank must be 1-4");
  }
  values_.assign(element_count(dims_), fill);
}

Tensor::Tensor(Dims dims, std::vector<double> values) : dims_(std::move(dims)), values_(std::move(values)) {
  if (dims_.empty() || dims_.size() > 4) {
    throw NnError(NnErrc::kShapeMismatch, "tensor rank must be 1-4");
  }
  if (values_.size() != element_count(dims_)) {
    throw NnError(NnErrc::kShapeMismatch, "value count " + std::to_string(values_.size()) +
                                              " does not match dims " + dims_to_string(dims_));
  }
}

Tensor Tensor::reshaped(Dims dims) const { return Tensor(std::move(dims), values_); }

bool Tensor::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Chw chw_of(const Tensor& t) {
  if (t.rank() != 3) {
    throw NnError(NnErrc::kShapeMismatch, "expected [C,H,W], got " + dims_to_string(t.dims()));
  }
  return {t.dim(0), t.dim(1), t.dim(2)};
}

}  // namespace survx::nn
