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

namespace survx::eval {

enum class EvalErrc {
  kBadHeader,
  kMalformedRow,
  kScoreOutOfRange,
  kDuplicateRating,
  kEmpty,
  kTooFewSamples,
  kDegenerateVariance,
  kInsufficientPairs,
  kZeroVariance,
  kIdMismatch,
  kModelLoadFailure,
  kInvalidArgument,
  kBadReport,
};

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrc code, const std::string& what, int row = 0)
      : std::runtime_error(what), code_(code), row_(row) {}
  EvalErrc code() const noexcept { return code_; }
  // 1-based line number in the source file, 0 when not applicable.
  int row() const noexcept { return row_; }

 private:
  EvalErrc code_;
  int row_;
};

}  // namespace survx::eval
