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

#include "survx/nn/weights.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>

namespace survx::nn {

namespace {

static_assert(std::endian::native == std::endian::little, "NNWB I/O assumes a little-endian host");

constexpr char kMagic[4] = {'N', 'N', 'W', 'B'};

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  template <typename T>
  void pod(T v) {
    bytes(&v, sizeof(T));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  bool has(std::size_t n) const { return in_.size() - pos_ >= n; }
  template <typename T>
  T pod() {
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string str(std::size_t n) {
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

[[noreturn]] void truncated(const std::string& what) { throw NnError(NnErrc::kTruncatedTensor, what); }

}  // namespace

std::vector<std::uint8_t> save_weights(const WeightStore& store) {
  Writer w;
  w.bytes(kMagic, 4);
  w.pod<std::uint32_t>(kWeightFormatVersion);
  w.pod<std::uint32_t>(static_cast<std::uint32_t>(store.size()));
  for (const auto& [name, t] : store) {
    if (name.size() > 0xffff) throw NnError(NnErrc::kInvalidSpec, "tensor name too long");
    w.pod<std::uint16_t>(static_cast<std::uint16_t>(name.size()));
    w.bytes(name.data(), name.size());
    w.pod<std::uint8_t>(static_cast<std::uint8_t>(t.rank()));
    for (std::size_t d : t.dims()) w.pod<std::uint32_t>(static_cast<std::uint32_t>(d));
    for (double v : t.values()) w.pod<float>(static_cast<float>(v));
  }
  return w.take();
}

WeightStore load_weights(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (!r.has(4) || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw NnError(NnErrc::kBadMagic, "weight file does not start with NNWB");
  }
  r.str(4);
  if (!r.has(8)) truncated("weight file header truncated");
  const auto version = r.pod<std::uint32_t>();
  if (version != kWeightFormatVersion) {
    throw NnError(NnErrc::kVersionUnsupported, "weight format version " + std::to_string(version));
  }
  const auto count = r.pod<std::uint32_t>();
  WeightStore store;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::string where = "tensor #" + std::to_string(i);
    if (!r.has(2)) truncated(where + " header truncated");
    const auto name_len = r.pod<std::uint16_t>();
    if (!r.has(name_len)) truncated(where + " name truncated");
    const std::string name = r.str(name_len);
    if (!r.has(1)) truncated("tensor '" + name + "' header truncated");
    const auto rank = r.pod<std::uint8_t>();
    if (rank < 1 || rank > 4) throw NnError(NnErrc::kShapeMismatch, "tensor '" + name + "' has rank " + std::to_string(rank));
    if (!r.has(4u * rank)) truncated("tensor '" + name + "' dims truncated");
    Dims dims(rank);
    for (auto& d : dims) d = r.pod<std::uint32_t>();
    const std::size_t n = element_count(dims);
    if (n > (std::size_t{1} << 34) / sizeof(float) || !r.has(n * sizeof(float))) {
      truncated("tensor '" + name + "' values truncated");
    }
    std::vector<double> values(n);
    for (auto& v : values) v = r.pod<float>();
    if (store.contains(name)) throw NnError(NnErrc::kDuplicateName, "duplicate tensor '" + name + "'");
    store.set(name, Tensor(std::move(dims), std::move(values)));
  }
  return store;
}

void save_weights_file(const std::filesystem::path& path, const WeightStore& store) {
  const auto bytes = save_weights(store);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw NnError(NnErrc::kInvalidSpec, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

WeightStore load_weights_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NnError(NnErrc::kMissingWeight, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in), {});
  return load_weights(bytes);
}

void save_bundle(const std::filesystem::path& stem, const ModelBundle& bundle) {
  auto json_path = stem;
  json_path += ".json";
  auto weight_path = stem;
  weight_path += ".nnwb";
  std::ofstream out(json_path, std::ios::trunc);
  if (!out) throw NnError(NnErrc::kInvalidSpec, "cannot write " + json_path.string());
  out << spec_to_json(bundle.spec);
  save_weights_file(weight_path, bundle.weights);
}

ModelBundle load_bundle(const std::filesystem::path& stem) {
  auto json_path = stem;
  json_path += ".json";
  auto weight_path = stem;
  weight_path += ".nnwb";
  std::ifstream in(json_path);
  if (!in) throw NnError(NnErrc::kInvalidSpec, "cannot open " + json_path.string());
  const std::string text(std::istreambuf_iterator<char>(in), {});
  ModelBundle b{spec_from_json(text), load_weights_file(weight_path)};
  validate_weights(b.spec, b.weights);
  return b;
}

}  // namespace survx::nn
