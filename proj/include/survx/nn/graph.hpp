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

#include <optional>
#include <vector>

#include "survx/nn/network.hpp"

namespace survx::nn {

// Activations recorded by forward() for a later backward() pass.
struct Tape {
  NetworkSpec spec;
  WeightStore weights;
  Tensor input;
  std::vector<Tensor> activations;  // one per node, in node order
};

struct ForwardResult {
  std::vector<Tensor> outputs;  // in spec.outputs order
  std::optional<Tape> tape;
};

// Evaluates nodes in declaration order. Without a tape, intermediate
// activations are released after their last consumer runs.
ForwardResult forward(const NetworkSpec& spec, const WeightStore& weights, const Tensor& input,
                      bool record_tape = false);

// Single-output convenience.
Tensor run(const NetworkSpec& spec, const WeightStore& weights, const Tensor& input);

struct Gradients {
  WeightStore params;  // trainable parameters of non-frozen nodes only
  Tensor input;
};

// output_grads align with spec.outputs; an empty tensor means zero gradient.
Gradients backward(const std::optional<Tape>& tape, const std::vector<Tensor>& output_grads);
Gradients backward(const std::optional<Tape>& tape, const Tensor& output_grad);

}  // namespace survx::nn
