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

#include "survx/nn/graph.hpp"

#include "survx/nn/ops.hpp"

namespace survx::nn {

namespace {

Activation activation_of(OpKind kind) {
  switch (kind) {
    case OpKind::kPrelu: return Activation::kPrelu;
    case OpKind::kLeakyRelu: return Activation::kLeakyRelu;
    case OpKind::kTanh: return Activation::kTanh;
    case OpKind::kSigmoid: return Activation::kSigmoid;
    default: return Activation::kRelu;
  }
}

bool is_activation(OpKind kind) {
  return kind == OpKind::kPrelu || kind == OpKind::kLeakyRelu || kind == OpKind::kRelu ||
         kind == OpKind::kTanh || kind == OpKind::kSigmoid;
}

Tensor activation_slope(const Node& n, const WeightStore& w) {
  if (n.kind == OpKind::kPrelu) return w.get(n.name + ".slope");
  return Tensor(Dims{1}, std::vector<double>{n.params.slope});
}

Tensor eval_node(const Node& n, const WeightStore& w, const std::vector<const Tensor*>& in) {
  const Tensor& x = *in.front();
  switch (n.kind) {
    case OpKind::kConv2d:
      return conv2d(x, w.get(n.name + ".weight"), w.get(n.name + ".bias"), n.params.stride, n.params.padding);
    case OpKind::kDense:
      return dense(x, w.get(n.name + ".weight"), w.get(n.name + ".bias"));
    case OpKind::kBatchNormInference:
      return batchnorm_inference(x, w.get(n.name + ".gamma"), w.get(n.name + ".beta"), w.get(n.name + ".mean"),
                                 w.get(n.name + ".var"), n.params.eps);
    case OpKind::kPixelShuffle:
      return pixel_shuffle(x, n.params.factor);
    case OpKind::kAdd:
      return add(x, *in[1]);
    case OpKind::kMaxPool2:
      return maxpool2(x);
    case OpKind::kGlobalMean:
      return global_mean(x);
    default:
      return apply_activation(x, activation_of(n.kind), activation_slope(n, w));
  }
}

void accumulate(std::optional<Tensor>& slot, Tensor g) {
  if (!slot) {
    slot = std::move(g);
    return;
  }
  for (std::size_t i = 0; i < g.size(); ++i) (*slot)[i] += g[i];
}

}  // namespace

ForwardResult forward(const NetworkSpec& spec, const WeightStore& weights, const Tensor& input, bool record_tape) {
  infer_shapes(spec, input.dims());
  validate_weights(spec, weights);
  const std::size_t n_nodes = spec.nodes.size();

  // Resolve inputs to indices (-1 = graph input) and last consumer per node.
  std::vector<std::vector<int>> sources(n_nodes);
  std::vector<std::size_t> last_use(n_nodes, 0);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    for (const auto& name : spec.nodes[i].inputs) {
      const int src = name == spec.input_name ? -1 : spec.node_index(name);
      sources[i].push_back(src);
      if (src >= 0) last_use[static_cast<std::size_t>(src)] = i;
    }
  }
  std::vector<bool> is_output(n_nodes, false);
  for (const auto& o : spec.outputs) is_output[static_cast<std::size_t>(spec.node_index(o))] = true;

  std::vector<Tensor> acts(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const Node& n = spec.nodes[i];
    std::vector<const Tensor*> in;
    for (int src : sources[i]) in.push_back(src < 0 ? &input : &acts[static_cast<std::size_t>(src)]);
    try {
      acts[i] = eval_node(n, weights, in);
    } catch (const NnError& e) {
      throw NnError(e.code(), "node '" + n.name + "': " + e.what());
    }
    if (!record_tape) {
      for (int src : sources[i]) {
        const auto s = static_cast<std::size_t>(src);
        if (src >= 0 && last_use[s] == i && !is_output[s]) acts[s] = Tensor();
      }
    }
  }

  ForwardResult result;
  for (const auto& o : spec.outputs) result.outputs.push_back(acts[static_cast<std::size_t>(spec.node_index(o))]);
  if (record_tape) result.tape = Tape{spec, weights, input, std::move(acts)};
  return result;
}

Tensor run(const NetworkSpec& spec, const WeightStore& weights, const Tensor& input) {
  return std::move(forward(spec, weights, input, false).outputs.front());
}

Gradients backward(const std::optional<Tape>& tape, const Tensor& output_grad) {
  return backward(tape, std::vector<Tensor>{output_grad});
}

Gradients backward(const std::optional<Tape>& tape, const std::vector<Tensor>& output_grads) {
  if (!tape) throw NnError(NnErrc::kNoTape, "backward requires a tape recorded by forward()");
  const NetworkSpec& spec = tape->spec;
  const WeightStore& w = tape->weights;
  if (output_grads.size() != spec.outputs.size()) {
    throw NnError(NnErrc::kShapeMismatch, "expected one gradient per network output");
  }
  const std::size_t n_nodes = spec.nodes.size();
  std::vector<std::optional<Tensor>> grads(n_nodes);
  std::optional<Tensor> input_grad;
  for (std::size_t k = 0; k < spec.outputs.size(); ++k) {
    if (output_grads[k].size() == 0) continue;
    const auto idx = static_cast<std::size_t>(spec.node_index(spec.outputs[k]));
    if (output_grads[k].dims() != tape->activations[idx].dims()) {
      throw NnError(NnErrc::kShapeMismatch, "gradient for output '" + spec.outputs[k] + "' has dims " +
                                                dims_to_string(output_grads[k].dims()));
    }
    accumulate(grads[idx], output_grads[k]);
  }

  auto source_of = [&](const std::string& name) -> const Tensor& {
    return name == spec.input_name ? tape->input : tape->activations[static_cast<std::size_t>(spec.node_index(name))];
  };
  auto send = [&](const std::string& name, Tensor g) {
    if (name == spec.input_name) {
      accumulate(input_grad, std::move(g));
    } else {
      accumulate(grads[static_cast<std::size_t>(spec.node_index(name))], std::move(g));
    }
  };

  Gradients out;
  for (std::size_t i = n_nodes; i-- > 0;) {
    if (!grads[i]) continue;
    const Node& n = spec.nodes[i];
    const Tensor& g = *grads[i];
    const Tensor& x = source_of(n.inputs.front());
    const bool emit = !n.frozen;
    switch (n.kind) {
      case OpKind::kConv2d: {
        ConvGrads cg = conv2d_backward(x, w.get(n.name + ".weight"), n.params.stride, n.params.padding, g);
        if (emit) {
          out.params.set(n.name + ".weight", std::move(cg.weight));
          out.params.set(n.name + ".bias", std::move(cg.bias));
        }
        send(n.inputs.front(), std::move(cg.input));
        break;
      }
      case OpKind::kDense: {
        ConvGrads cg = dense_backward(x, w.get(n.name + ".weight"), g);
        if (emit) {
          out.params.set(n.name + ".weight", std::move(cg.weight));
          out.params.set(n.name + ".bias", std::move(cg.bias));
        }
        send(n.inputs.front(), std::move(cg.input));
        break;
      }
      case OpKind::kBatchNormInference: {
        BatchNormGrads bg = batchnorm_backward(x, w.get(n.name + ".gamma"), w.get(n.name + ".mean"),
                                               w.get(n.name + ".var"), n.params.eps, g);
        if (emit) {
          out.params.set(n.name + ".gamma", std::move(bg.gamma));
          out.params.set(n.name + ".beta", std::move(bg.beta));
        }
        send(n.inputs.front(), std::move(bg.input));
        break;
      }
      case OpKind::kPixelShuffle:
        send(n.inputs.front(), pixel_unshuffle(g, n.params.factor));
        break;
      case OpKind::kAdd:
        send(n.inputs[0], g);
        send(n.inputs[1], g);
        break;
      case OpKind::kMaxPool2:
        send(n.inputs.front(), maxpool2_backward(x, g));
        break;
      case OpKind::kGlobalMean:
        send(n.inputs.front(), global_mean_backward(x, g));
        break;
      default: {
        if (!is_activation(n.kind)) break;
        ActivationGrads ag =
            activation_backward(x, tape->activations[i], activation_of(n.kind), activation_slope(n, w), g);
        if (n.kind == OpKind::kPrelu && emit) out.params.set(n.name + ".slope", std::move(ag.slope));
        send(n.inputs.front(), std::move(ag.input));
        break;
      }
    }
    grads[i].reset();
  }
  out.input = input_grad ? std::move(*input_grad) : Tensor(tape->input.dims());
  return out;
}

}  // namespace survx::nn
