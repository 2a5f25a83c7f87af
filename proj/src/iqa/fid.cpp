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

#include "survx/iqa/fid.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace survx::iqa {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> view(const Matrix& m) {
  return {m.values.data(), static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n)};
}

Matrix from_eigen(const RowMatrix& e) {
  Matrix m(static_cast<std::size_t>(e.rows()));
  Eigen::Map<RowMatrix>(m.values.data(), e.rows(), e.cols()) = e;
  return m;
}

void symmetrize(Matrix& m) {
  for (std::size_t r = 0; r < m.n; ++r) {
    for (std::size_t c = r + 1; c < m.n; ++c) {
      const double avg = 0.5 * (m(r, c) + m(c, r));
      m(r, c) = avg;
      m(c, r) = avg;
    }
  }
}

// Eigenvalues of a symmetric PSD matrix with negative ones clipped, under the
// same tolerance as sqrtm_psd.
Eigen::SelfAdjointEigenSolver<RowMatrix> psd_eigen(const Matrix& m, Eigen::VectorXd& clipped) {
  Eigen::SelfAdjointEigenSolver<RowMatrix> solver(view(m));
  if (solver.info() != Eigen::Success) {
    throw IqaError(IqaErrc::kSignificantlyNegativeEigenvalue, "eigendecomposition failed");
  }
  clipped = solver.eigenvalues();
  const double scale = std::max(1.0, clipped.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < clipped.size(); ++i) {
    if (clipped(i) < -kNegativeEigenTolerance * scale) {
      throw IqaError(IqaErrc::kSignificantlyNegativeEigenvalue,
                     "eigenvalue " + std::to_string(clipped(i)) + " is significantly negative");
    }
    clipped(i) = std::max(clipped(i), 0.0);
  }
  return solver;
}

}  // namespace

Matrix Matrix::identity(std::size_t size) {
  Matrix m(size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

GaussianStats gaussian_stats(const std::vector<std::vector<double>>& features) {
  if (features.size() < 2) throw IqaError(IqaErrc::kTooFewSamples, "need at least 2 feature vectors");
  const std::size_t d = features.front().size();
  if (d == 0) throw IqaError(IqaErrc::kDimMismatch, "empty feature vectors");
  for (const auto& f : features) {
    if (f.size() != d) throw IqaError(IqaErrc::kDimMismatch, "feature vectors differ in dimension");
  }
  GaussianStats s;
  s.n = features.size();
  s.mean.assign(d, 0.0);
  for (const auto& f : features) {
    for (std::size_t i = 0; i < d; ++i) s.mean[i] += f[i];
  }
  for (double& m : s.mean) m /= static_cast<double>(s.n);
  s.cov = Matrix(d);
  for (const auto& f : features) {
    for (std::size_t r = 0; r < d; ++r) {
      const double dr = f[r] - s.mean[r];
      for (std::size_t c = 0; c < d; ++c) s.cov(r, c) += dr * (f[c] - s.mean[c]);
    }
  }
  for (double& v : s.cov.values) v /= static_cast<double>(s.n - 1);
  symmetrize(s.cov);
  return s;
}

Matrix sqrtm_psd(const Matrix& m) {
  double scale = 1.0;
  for (double v : m.values) scale = std::max(scale, std::abs(v));
  for (std::size_t r = 0; r < m.n; ++r) {
    for (std::size_t c = r + 1; c < m.n; ++c) {
      if (std::abs(m(r, c) - m(c, r)) > kSymmetryTolerance * scale) {
        throw IqaError(IqaErrc::kNotSymmetric, "matrix is not symmetric at (" + std::to_string(r) + "," +
                                                   std::to_string(c) + ")");
      }
    }
  }
  Matrix sym = m;
  symmetrize(sym);
  Eigen::VectorXd eig;
  const auto solver = psd_eigen(sym, eig);
  const RowMatrix& v = solver.eigenvectors();
  RowMatrix root = v * eig.cwiseSqrt().asDiagonal() * v.transpose();
  Matrix out = from_eigen(root);
  symmetrize(out);
  return out;
}

double fid(const GaussianStats& a, const GaussianStats& b) {
  if (a.mean.size() != b.mean.size() || a.cov.n != b.cov.n || a.cov.n != a.mean.size()) {
    throw IqaError(IqaErrc::kDimMismatch, "FID statistics have different dimensions");
  }
  double mean_term = 0.0;
  for (std::size_t i = 0; i < a.mean.size(); ++i) {
    const double d = a.mean[i] - b.mean[i];
    mean_term += d * d;
  }
  const Matrix root_a = sqrtm_psd(a.cov);
  const RowMatrix product = view(root_a) * view(b.cov) * view(root_a);
  Matrix inner = from_eigen(product);
  symmetrize(inner);
  Eigen::VectorXd eig;
  psd_eigen(inner, eig);
  const double cross = eig.cwiseSqrt().sum();
  const double value = mean_term + a.cov.trace() + b.cov.trace() - 2.0 * cross;
  return std::max(0.0, value);
}

}  // namespace survx::iqa
