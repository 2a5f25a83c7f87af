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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace survx::nn {

enum class NnErrc {
  kShapeMismatch,
  kEmptyOutput,
  kChannelNotDivisible,
  kSlopeShapeMismatch,
  kMissingWeight,
  kNoTape,
  kBadMagic,
  kVersionUnsupported,
  kTruncatedTensor,
  kDuplicateName,
  kInvalidSpec,
  kNonFinite,
};

class NnError : public std::runtime_error {
 public:
  NnError(NnErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  NnErrc code() const noexcept { return code_; }

 private:
  NnErrc code_;
};

using Dims = std::vector<std::size_t>;

std::size_t element_count(const Dims& dims) noexcept;
std::string dims_to_string(const Dims& dims);

// Dense row-major tensor of rank 1-4.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Dims dims, double fill = 0.0);
  Tensor(Dims dims, std::vector<double> values);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  std::size_t size() const noexcept { return values_.size(); }

  std::vector<double>& values() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  // Same values under new dims; element counts must agree.
  Tensor reshaped(Dims dims) const;

  bool all_finite() const noexcept;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Dims dims_;
  std::vector<double> values_;
};

// Convenience accessors for [C,H,W] feature maps.
struct Chw {
  std::size_t c, h, w;
};
Chw chw_of(const Tensor& t);

}  // namespace survx::nn
