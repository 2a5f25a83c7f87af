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

#include <stdexcept>
#include <string>

namespace survx::iqa {

enum class IqaErrc {
  kDimMismatch,
  kTooSmall,
  kWeightMismatch,
  kWeightShapeMismatch,
  kWeightNormalization,
  kTooFewSamples,
  kNotSymmetric,
  kSignificantlyNegativeEigenvalue,
};

class IqaError : public std::runtime_error {
 public:
  IqaError(IqaErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  IqaErrc code() const noexcept { return code_; }

 private:
  IqaErrc code_;
};

}  // namespace survx::iqa
