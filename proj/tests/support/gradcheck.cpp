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

#include "gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "test_images.hpp"

namespace survx::testing {
namespace {

double loss(const nn::NetworkSpec& spec, const nn::WeightStore& weights, const nn::Tensor& input,
            const nn::Tensor& g) {
  const auto out = nn::run(spec, weights, input);
  double acc = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) acc += g[i] * out[i];
  return acc;
}

double rel_error(double a, double n) { return std::fabs(a - n) / std::max({std::fabs(a), std::fabs(n), 1e-6}); }

}  // namespace

GradCheckResult gradient_check(const nn::NetworkSpec& spec, const nn::WeightStore& weights, const nn::Tensor& input,
                               double eps, std::uint64_t seed) {
  auto fwd = nn::forward(spec, weights, input, true);
  const auto& out = fwd.outputs.front();
  const nn::Tensor g(out.dims(), random_values(out.size(), seed));
  const auto grads = nn::backward(fwd.tape, g);

  GradCheckResult r;
  auto record = [&](double analytic, double numeric, const std::string& name) {
    const double e = rel_error(analytic, numeric);
    ++r.checked;
    if (e > r.max_rel_error) {
      r.max_rel_error = e;
      r.worst = name;
    }
  };

  nn::WeightStore w = weights;
  for (const auto& [name, grad] : grads.params) {
    auto& t = w.mutable_get(name);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double keep = t[i];
      t[i] = keep + eps;
      const double up = loss(spec, w, input, g);
      t[i] = keep - eps;
      const double down = loss(spec, w, input, g);
      t[i] = keep;
      record(grad[i], (up - down) / (2 * eps), name);
    }
  }
  nn::Tensor x = input;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + eps;
    const double up = loss(spec, weights, x, g);
    x[i] = keep - eps;
    const double down = loss(spec, weights, x, g);
    x[i] = keep;
    record(grads.input[i], (up - down) / (2 * eps), "input");
  }
  return r;
}

}  // namespace survx::testing
