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
#include <vector>

#include "survx/iqa/common.hpp"

namespace survx::iqa {

// Dense square matrix, row-major.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> values;

  Matrix() = default;
  explicit Matrix(std::size_t size, double fill = 0.0) : n(size), values(size * size, fill) {}
  static Matrix identity(std::size_t size);
  static Matrix diagonal(const std::vector<double>& d);

  double& operator()(std::size_t r, std::size_t c) { return values[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values[r * n + c]; }
  double trace() const;
};

struct GaussianStats {
  std::vector<double> mean;
  Matrix cov;  // unbiased (n-1), exactly symmetric
  std::size_t n = 0;
};

GaussianStats gaussian_stats(const std::vector<std::vector<double>>& features);

inline constexpr double kSymmetryTolerance = 1e-8;
inline constexpr double kNegativeEigenTolerance = 1e-8;

// Principal square root of a symmetric PSD matrix via eigendecomposition.
// Eigenvalues in [-tol*scale, 0) are clipped to zero, with scale =
// max(1, largest |eigenvalue|); anything more negative is an error.
Matrix sqrtm_psd(const Matrix& m);

// Frechet distance between two Gaussians:
// |mu_a - mu_b|^2 + Tr(S_a + S_b - 2 sqrtm(S_a^1/2 S_b S_a^1/2)), clamped at 0.
double fid(const GaussianStats& a, const GaussianStats& b);

}  // namespace survx::iqa
