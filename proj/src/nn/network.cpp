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

#include "survx/nn/network.hpp"

#include <json.hpp>
#include <set>

namespace survx::nn {

namespace {

using nlohmann::json;

struct OpEntry {
  OpKind kind;
  std::string_view name;
};

constexpr OpEntry kOps[] = {
    {OpKind::kConv2d, "conv2d"},
    {OpKind::kPrelu, "prelu"},
    {OpKind::kLeakyRelu, "leaky_relu"},
    {OpKind::kRelu, "relu"},
    {OpKind::kTanh, "tanh"},
    {OpKind::kSigmoid, "sigmoid"},
    {OpKind::kBatchNormInference, "batchnorm_inference"},
    {OpKind::kPixelShuffle, "pixel_shuffle"},
    {OpKind::kAdd, "add"},
    {OpKind::kMaxPool2, "maxpool2"},
    {OpKind::kGlobalMean, "global_mean"},
    {OpKind::kDense, "dense"},
};

[[noreturn]] void invalid(const std::string& msg) { throw NnError(NnErrc::kInvalidSpec, msg); }

std::size_t arity(OpKind kind) { return kind == OpKind::kAdd ? 2 : 1; }

Dims shape_for_node(const Node& n, const std::vector<Dims>& in) {
  auto fail = [&](const std::string& msg) -> Dims {
    throw NnError(NnErrc::kShapeMismatch, "node '" + n.name + "': " + msg);
  };
  const Dims& x = in.front();
  if (x.size() != 3) return fail("expected [C,H,W] input, got " + dims_to_string(x));
  const std::size_t c = x[0], h = x[1], w = x[2];
  const NodeParams& p = n.params;
  switch (n.kind) {
    case OpKind::kConv2d: {
      if (static_cast<std::size_t>(p.in_channels) != c) {
        return fail("declares " + std::to_string(p.in_channels) + " input channels, receives " + std::to_string(c));
      }
      const long sh = static_cast<long>(h) + 2L * p.padding - p.kernel;
      const long sw = static_cast<long>(w) + 2L * p.padding - p.kernel;
      if (sh < 0 || sw < 0) return fail("kernel larger than padded input " + dims_to_string(x));
      return {static_cast<std::size_t>(p.out_channels), static_cast<std::size_t>(sh / p.stride + 1),
              static_cast<std::size_t>(sw / p.stride + 1)};
    }
    case OpKind::kPrelu:
    case OpKind::kBatchNormInference:
      if (static_cast<std::size_t>(p.in_channels) != c) {
        return fail("declares " + std::to_string(p.in_channels) + " channels, receives " + std::to_string(c));
      }
      return x;
    case OpKind::kLeakyRelu:
    case OpKind::kRelu:
    case OpKind::kTanh:
    case OpKind::kSigmoid:
      return x;
    case OpKind::kPixelShuffle: {
      const std::size_t rr = static_cast<std::size_t>(p.factor) * p.factor;
      if (c % rr != 0) return fail(std::to_string(c) + " channels not divisible by r^2");
      return {c / rr, h * p.factor, w * p.factor};
    }
    case OpKind::kAdd:
      if (in[0] != in[1]) return fail("operand dims differ: " + dims_to_string(in[0]) + " vs " + dims_to_string(in[1]));
      return x;
    case OpKind::kMaxPool2:
      if (h < 2 || w < 2) return fail("maxpool2 input smaller than 2x2");
      return {c, h / 2, w / 2};
    case OpKind::kGlobalMean:
      return {c, 1, 1};
    case OpKind::kDense:
      if (static_cast<std::size_t>(p.in_channels) != c * h * w) {
        return fail("declares " + std::to_string(p.in_channels) + " input features, receives " +
                    std::to_string(c * h * w));
      }
      return {static_cast<std::size_t>(p.out_channels), 1, 1};
  }
  return fail("unknown op");
}

json params_to_json(const Node& n) {
  const NodeParams& p = n.params;
  switch (n.kind) {
    case OpKind::kConv2d:
      return {{"kernel", p.kernel}, {"in_channels", p.in_channels}, {"out_channels", p.out_channels},
              {"stride", p.stride}, {"padding", p.padding}};
    case OpKind::kPrelu:
      return {{"in_channels", p.in_channels}};
    case OpKind::kBatchNormInference:
      return {{"in_channels", p.in_channels}, {"eps", p.eps}};
    case OpKind::kLeakyRelu:
      return {{"slope", p.slope}};
    case OpKind::kPixelShuffle:
      return {{"factor", p.factor}};
    case OpKind::kDense:
      return {{"in_channels", p.in_channels}, {"out_channels", p.out_channels}};
    default:
      return json::object();
  }
}

NodeParams params_from_json(const json& j) {
  NodeParams p;
  p.kernel = j.value("kernel", p.kernel);
  p.in_channels = j.value("in_channels", p.in_channels);
  p.out_channels = j.value("out_channels", p.out_channels);
  p.stride = j.value("stride", p.stride);
  p.padding = j.value("padding", p.padding);
  p.factor = j.value("factor", p.factor);
  p.slope = j.value("slope", p.slope);
  p.eps = j.value("eps", p.eps);
  return p;
}

}  // namespace

std::string_view op_name(OpKind kind) noexcept {
  for (const auto& e : kOps) {
    if (e.kind == kind) return e.name;
  }
  return "unknown";
}

OpKind op_from_name(std::string_view name) {
  for (const auto& e : kOps) {
    if (e.name == name) return e.kind;
  }
  invalid("unknown op kind '" + std::string(name) + "'");
}

const Node& NetworkSpec::node(std::string_view name) const {
  const int i = node_index(name);
  if (i < 0) invalid("no node named '" + std::string(name) + "'");
  return nodes[static_cast<std::size_t>(i)];
}

int NetworkSpec::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<ParamSlot> param_slots(const Node& n) {
  const NodeParams& p = n.params;
  const auto in = static_cast<std::size_t>(p.in_channels);
  const auto out = static_cast<std::size_t>(p.out_channels);
  const auto k = static_cast<std::size_t>(p.kernel);
  switch (n.kind) {
    case OpKind::kConv2d:
      return {{n.name + ".weight", {out, in, k, k}}, {n.name + ".bias", {out}}};
    case OpKind::kDense:
      return {{n.name + ".weight", {out, in}}, {n.name + ".bias", {out}}};
    case OpKind::kPrelu:
      return {{n.name + ".slope", {in}}};
    case OpKind::kBatchNormInference:
      return {{n.name + ".gamma", {in}},
              {n.name + ".beta", {in}},
              {n.name + ".mean", {in}, false},
              {n.name + ".var", {in}, false}};
    default:
      return {};
  }
}

std::vector<ParamSlot> param_slots(const NetworkSpec& spec) {
  std::vector<ParamSlot> all;
  for (const auto& n : spec.nodes) {
    auto slots = param_slots(n);
    all.insert(all.end(), slots.begin(), slots.end());
  }
  return all;
}

std::size_t parameter_count(const NetworkSpec& spec) {
  std::size_t total = 0;
  for (const auto& s : param_slots(spec)) total += element_count(s.dims);
  return total;
}

void validate(const NetworkSpec& spec) {
  if (spec.input_channels < 1) invalid("input channel count must be positive");
  std::map<std::string, int> channels{{spec.input_name, spec.input_channels}};
  for (const auto& n : spec.nodes) {
    if (n.name.empty()) invalid("node with empty name");
    if (channels.count(n.name)) invalid("duplicate node name '" + n.name + "'");
    if (n.inputs.size() != arity(n.kind)) {
      invalid("node '" + n.name + "' (" + std::string(op_name(n.kind)) + ") needs " +
              std::to_string(arity(n.kind)) + " inputs");
    }
    std::vector<int> in_ch;
    for (const auto& src : n.inputs) {
      auto it = channels.find(src);
      if (it == channels.end()) invalid("node '" + n.name + "' reads unknown or later node '" + src + "'");
      in_ch.push_back(it->second);
    }
    const NodeParams& p = n.params;
    const int c = in_ch.front();
    int out_c = c;
    switch (n.kind) {
      case OpKind::kConv2d:
        if (p.kernel < 1 || p.stride < 1 || p.padding < 0 || p.out_channels < 1) {
          invalid("node '" + n.name + "': bad conv parameters");
        }
        if (p.in_channels != c) {
          invalid("node '" + n.name + "' declares " + std::to_string(p.in_channels) + " input channels, edge carries " +
                  std::to_string(c));
        }
        out_c = p.out_channels;
        break;
      case OpKind::kPrelu:
      case OpKind::kBatchNormInference:
        if (p.in_channels != c) {
          invalid("node '" + n.name + "' declares " + std::to_string(p.in_channels) + " channels, edge carries " +
                  std::to_string(c));
        }
        break;
      case OpKind::kPixelShuffle:
        if (p.factor < 1 || c % (p.factor * p.factor) != 0) {
          invalid("node '" + n.name + "': " + std::to_string(c) + " channels not divisible by r^2");
        }
        out_c = c / (p.factor * p.factor);
        break;
      case OpKind::kAdd:
        if (in_ch[0] != in_ch[1]) invalid("node '" + n.name + "' adds tensors with different channel counts");
        break;
      case OpKind::kDense:
        if (p.in_channels < 1 || p.out_channels < 1) invalid("node '" + n.name + "': bad dense sizes");
        out_c = p.out_channels;
        break;
      default:
        break;
    }
    channels[n.name] = out_c;
  }
  if (spec.outputs.empty()) invalid("network has no outputs");
  for (const auto& o : spec.outputs) {
    if (!channels.count(o)) invalid("output '" + o + "' is not a node");
  }
}

std::vector<Dims> infer_shapes(const NetworkSpec& spec, const Dims& input_dims) {
  validate(spec);
  if (input_dims.size() != 3 || input_dims[0] != static_cast<std::size_t>(spec.input_channels)) {
    throw NnError(NnErrc::kShapeMismatch, "graph input expects " + std::to_string(spec.input_channels) +
                                              " channels, got " + dims_to_string(input_dims));
  }
  std::map<std::string, Dims> known{{spec.input_name, input_dims}};
  std::vector<Dims> out;
  out.reserve(spec.nodes.size());
  for (const auto& n : spec.nodes) {
    std::vector<Dims> in;
    for (const auto& src : n.inputs) in.push_back(known.at(src));
    out.push_back(shape_for_node(n, in));
    known[n.name] = out.back();
  }
  return out;
}

void WeightStore::set(const std::string& name, Tensor t) { tensors_[name] = std::move(t); }

const Tensor& WeightStore::get(const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw NnError(NnErrc::kMissingWeight, "missing weight '" + name + "'");
  return it->second;
}

Tensor& WeightStore::mutable_get(const std::string& name) {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw NnError(NnErrc::kMissingWeight, "missing weight '" + name + "'");
  return it->second;
}

void validate_weights(const NetworkSpec& spec, const WeightStore& weights) {
  for (const auto& slot : param_slots(spec)) {
    const Tensor& t = weights.get(slot.name);
    if (t.dims() != slot.dims) {
      throw NnError(NnErrc::kShapeMismatch, "weight '" + slot.name + "' has dims " + dims_to_string(t.dims()) +
                                                ", expected " + dims_to_string(slot.dims));
    }
    if (!t.all_finite()) throw NnError(NnErrc::kNonFinite, "weight '" + slot.name + "' has non-finite values");
  }
}

std::string spec_to_json(const NetworkSpec& spec) {
  json nodes = json::array();
  for (const auto& n : spec.nodes) {
    json jn = {{"name", n.name}, {"op", op_name(n.kind)}, {"inputs", n.inputs}, {"params", params_to_json(n)}};
    if (n.frozen) jn["frozen"] = true;
    nodes.push_back(std::move(jn));
  }
  json doc = {{"format", "survx-network"},
              {"version", 1},
              {"input", {{"name", spec.input_name}, {"channels", spec.input_channels}}},
              {"nodes", std::move(nodes)},
              {"outputs", spec.outputs}};
  if (!spec.metadata.empty()) doc["metadata"] = spec.metadata;
  return doc.dump(2) + "\n";
}

NetworkSpec spec_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(std::string("network JSON: ") + e.what());
  }
  try {
    if (doc.value("format", std::string()) != "survx-network") invalid("not a survx-network document");
    if (doc.value("version", 0) != 1) invalid("unsupported network JSON version");
    NetworkSpec spec;
    spec.input_name = doc.at("input").value("name", std::string("input"));
    spec.input_channels = doc.at("input").at("channels").get<int>();
    for (const auto& jn : doc.at("nodes")) {
      Node n;
      n.name = jn.at("name").get<std::string>();
      n.kind = op_from_name(jn.at("op").get<std::string>());
      n.inputs = jn.at("inputs").get<std::vector<std::string>>();
      n.params = params_from_json(jn.value("params", json::object()));
      n.frozen = jn.value("frozen", false);
      spec.nodes.push_back(std::move(n));
    }
    spec.outputs = doc.at("outputs").get<std::vector<std::string>>();
    if (doc.contains("metadata")) spec.metadata = doc.at("metadata").get<std::map<std::string, std::string>>();
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    invalid(std::string("network JSON: ") + e.what());
  }
}

}  // namespace survx::nn
