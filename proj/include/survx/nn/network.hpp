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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "survx/nn/tensor.hpp"

namespace survx::nn {

enum class OpKind {
  kConv2d,
  kPrelu,
  kLeakyRelu,
  kRelu,
  kTanh,
  kSigmoid,
  kBatchNormInference,
  kPixelShuffle,
  kAdd,
  kMaxPool2,
  kGlobalMean,
  kDense,
};

std::string_view op_name(OpKind kind) noexcept;
OpKind op_from_name(std::string_view name);

// Fields not used by an op kind are ignored. For dense, in_channels and
// out_channels are the feature counts.
struct NodeParams {
  int kernel = 1;
  int in_channels = 0;
  int out_channels = 0;
  int stride = 1;
  int padding = 0;
  int factor = 1;
  double slope = 0.2;
  double eps = 1e-5;

  friend bool operator==(const NodeParams&, const NodeParams&) = default;
};

struct Node {
  std::string name;
  OpKind kind = OpKind::kRelu;
  NodeParams params;
  std::vector<std::string> inputs;
  // Frozen nodes never receive parameter gradients.
  bool frozen = false;

  friend bool operator==(const Node&, const Node&) = default;
};

struct NetworkSpec {
  std::string input_name = "input";
  int input_channels = 1;
  std::vector<Node> nodes;
  std::vector<std::string> outputs;
  // Free-form string metadata carried through serialization.
  std::map<std::string, std::string> metadata;

  const Node& node(std::string_view name) const;
  int node_index(std::string_view name) const;  // -1 for the graph input
  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

// Parameter tensors a node requires, e.g. "conv1.weight" [K,C,f,f].
struct ParamSlot {
  std::string name;
  Dims dims;
  bool trainable = true;
};
std::vector<ParamSlot> param_slots(const Node& node);
std::vector<ParamSlot> param_slots(const NetworkSpec& spec);
std::size_t parameter_count(const NetworkSpec& spec);

// Structural checks: unique names, inputs resolve to earlier nodes, op arity,
// channel consistency along every edge. Throws NnError(kInvalidSpec).
void validate(const NetworkSpec& spec);

// Output dims of every node for an input of the given [C,H,W] dims, in node
// order. Throws NnError(kShapeMismatch) naming the offending node.
std::vector<Dims> infer_shapes(const NetworkSpec& spec, const Dims& input_dims);

class WeightStore {
 public:
  void set(const std::string& name, Tensor t);
  const Tensor& get(const std::string& name) const;  // throws kMissingWeight
  Tensor& mutable_get(const std::string& name);
  bool contains(const std::string& name) const { return tensors_.count(name) != 0; }
  std::size_t size() const noexcept { return tensors_.size(); }
  bool empty() const noexcept { return tensors_.empty(); }

  const std::map<std::string, Tensor>& tensors() const noexcept { return tensors_; }
  auto begin() const { return tensors_.begin(); }
  auto end() const { return tensors_.end(); }

  friend bool operator==(const WeightStore&, const WeightStore&) = default;

 private:
  std::map<std::string, Tensor> tensors_;
};

// Every slot present with matching dims and finite values.
void validate_weights(const NetworkSpec& spec, const WeightStore& weights);

std::string spec_to_json(const NetworkSpec& spec);
NetworkSpec spec_from_json(std::string_view json);

}  // namespace survx::nn
