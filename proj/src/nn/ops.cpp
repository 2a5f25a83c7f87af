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

#include "survx/nn/ops.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

namespace survx::nn {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;

// Upper bound on the im2col scratch buffer, in doubles.
constexpr std::size_t kMaxColumnBuffer = std::size_t{1} << 22;

[[noreturn]] void shape_error(const std::string& msg) { throw NnError(NnErrc::kShapeMismatch, msg); }

struct ConvGeometry {
  std::size_t channels, height, width;
  std::size_t kernels, kh, kw;
  std::size_t out_h, out_w;
  int stride, padding;

  std::size_t patch() const { return channels * kh * kw; }
  std::size_t out_plane() const { return out_h * out_w; }
  // Output rows per band so the column buffer stays bounded.
  std::size_t band_rows() const {
    const std::size_t per_row = patch() * out_w;
    return std::clamp<std::size_t>(kMaxColumnBuffer / std::max<std::size_t>(per_row, 1), 1, out_h);
  }
};

ConvGeometry conv_geometry(const Tensor& input, const Tensor& weight, int stride, int padding) {
  const Chw in = chw_of(input);
  if (weight.rank() != 4) shape_error("conv weight must be [K,C,kh,kw], got " + dims_to_string(weight.dims()));
  if (weight.dim(1) != in.c) {
    shape_error("conv weight expects " + std::to_string(weight.dim(1)) + " input channels, got " +
                std::to_string(in.c));
  }
  if (stride < 1 || padding < 0) shape_error("conv stride must be >= 1 and padding >= 0");
  ConvGeometry g{in.c, in.h, in.w, weight.dim(0), weight.dim(2), weight.dim(3), 0, 0, stride, padding};
  const long span_h = static_cast<long>(in.h) + 2L * padding - static_cast<long>(g.kh);
  const long span_w = static_cast<long>(in.w) + 2L * padding - static_cast<long>(g.kw);
  if (span_h < 0 || span_w < 0) {
    throw NnError(NnErrc::kEmptyOutput, "conv kernel larger than padded input " + dims_to_string(input.dims()));
  }
  g.out_h = static_cast<std::size_t>(span_h / stride + 1);
  g.out_w = static_cast<std::size_t>(span_w / stride + 1);
  return g;
}

// Columns for output rows [y0, y1): row index (c*kh + i)*kw + j, column
// index (y - y0)*out_w + x.
void im2col(const ConvGeometry& g, const double* input, std::size_t y0, std::size_t y1, RowMatrix& cols) {
  const std::size_t ncols = (y1 - y0) * g.out_w;
  cols.resize(static_cast<Eigen::Index>(g.patch()), static_cast<Eigen::Index>(ncols));
  for (std::size_t c = 0; c < g.channels; ++c) {
    const double* plane = input + c * g.height * g.width;
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        double* row = cols.data() + ((c * g.kh + i) * g.kw + j) * ncols;
        for (std::size_t y = y0; y < y1; ++y) {
          const long iy = static_cast<long>(y) * g.stride - g.padding + static_cast<long>(i);
          double* dst = row + (y - y0) * g.out_w;
          if (iy < 0 || iy >= static_cast<long>(g.height)) {
            std::fill(dst, dst + g.out_w, 0.0);
            continue;
          }
          const double* src = plane + static_cast<std::size_t>(iy) * g.width;
          for (std::size_t x = 0; x < g.out_w; ++x) {
            const long ix = static_cast<long>(x) * g.stride - g.padding + static_cast<long>(j);
            dst[x] = (ix < 0 || ix >= static_cast<long>(g.width)) ? 0.0 : src[ix];
          }
        }
      }
    }
  }
}

void col2im_add(const ConvGeometry& g, const RowMatrix& cols, std::size_t y0, std::size_t y1, double* grad_input) {
  const std::size_t ncols = (y1 - y0) * g.out_w;
  for (std::size_t c = 0; c < g.channels; ++c) {
    double* plane = grad_input + c * g.height * g.width;
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        const double* row = cols.data() + ((c * g.kh + i) * g.kw + j) * ncols;
        for (std::size_t y = y0; y < y1; ++y) {
          const long iy = static_cast<long>(y) * g.stride - g.padding + static_cast<long>(i);
          if (iy < 0 || iy >= static_cast<long>(g.height)) continue;
          const double* src = row + (y - y0) * g.out_w;
          double* dst = plane + static_cast<std::size_t>(iy) * g.width;
          for (std::size_t x = 0; x < g.out_w; ++x) {
            const long ix = static_cast<long>(x) * g.stride - g.padding + static_cast<long>(j);
            if (ix >= 0 && ix < static_cast<long>(g.width)) dst[ix] += src[x];
          }
        }
      }
    }
  }
}

void check_same_dims(const Tensor& a, const Tensor& b, const char* what) {
  if (a.dims() != b.dims()) {
    shape_error(std::string(what) + ": " + dims_to_string(a.dims()) + " vs " + dims_to_string(b.dims()));
  }
}

}  // namespace

Tensor conv2d(const Tensor& input, const Tensor& weight, const Tensor& bias, int stride, int padding) {
  const ConvGeometry g = conv_geometry(input, weight, stride, padding);
  if (bias.size() != 0 && bias.size() != g.kernels) {
    shape_error("conv bias has " + std::to_string(bias.size()) + " values for " + std::to_string(g.kernels) + " kernels");
  }
  Tensor out({g.kernels, g.out_h, g.out_w});
  MatrixMap out_mat(out.data(), static_cast<Eigen::Index>(g.kernels), static_cast<Eigen::Index>(g.out_plane()));
  ConstMatrixMap w(weight.data(), static_cast<Eigen::Index>(g.kernels), static_cast<Eigen::Index>(g.patch()));

  RowMatrix cols;
  const std::size_t band = g.band_rows();
  for (std::size_t y0 = 0; y0 < g.out_h; y0 += band) {
    const std::size_t y1 = std::min(g.out_h, y0 + band);
    im2col(g, input.data(), y0, y1, cols);
    out_mat.middleCols(static_cast<Eigen::Index>(y0 * g.out_w), cols.cols()).noalias() = w * cols;
  }
  if (bias.size() != 0) {
    for (std::size_t k = 0; k < g.kernels; ++k) out_mat.row(static_cast<Eigen::Index>(k)).array() += bias[k];
  }
  return out;
}

ConvGrads conv2d_backward(const Tensor& input, const Tensor& weight, int stride, int padding,
                          const Tensor& grad_output) {
  const ConvGeometry g = conv_geometry(input, weight, stride, padding);
  if (grad_output.dims() != Dims{g.kernels, g.out_h, g.out_w}) {
    shape_error("conv grad_output dims " + dims_to_string(grad_output.dims()));
  }
  ConvGrads grads{Tensor(input.dims()), Tensor(weight.dims()), Tensor(Dims{g.kernels})};
  ConstMatrixMap go(grad_output.data(), static_cast<Eigen::Index>(g.kernels), static_cast<Eigen::Index>(g.out_plane()));
  ConstMatrixMap w(weight.data(), static_cast<Eigen::Index>(g.kernels), static_cast<Eigen::Index>(g.patch()));
  MatrixMap gw(grads.weight.data(), static_cast<Eigen::Index>(g.kernels), static_cast<Eigen::Index>(g.patch()));

  RowMatrix cols;
  RowMatrix grad_cols;
  const std::size_t band = g.band_rows();
  for (std::size_t y0 = 0; y0 < g.out_h; y0 += band) {
    const std::size_t y1 = std::min(g.out_h, y0 + band);
    im2col(g, input.data(), y0, y1, cols);
    const auto go_band = go.middleCols(static_cast<Eigen::Index>(y0 * g.out_w), cols.cols());
    gw.noalias() += go_band * cols.transpose();
    grad_cols.noalias() = w.transpose() * go_band;
    col2im_add(g, grad_cols, y0, y1, grads.input.data());
  }
  const double* gp = grad_output.data();
  for (std::size_t k = 0; k < g.kernels; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.out_plane(); ++i) acc += gp[k * g.out_plane() + i];
    grads.bias[k] = acc;
  }
  return grads;
}

Tensor pixel_shuffle(const Tensor& input, int r) {
  const Chw in = chw_of(input);
  if (r < 1) throw NnError(NnErrc::kChannelNotDivisible, "shuffle factor must be >= 1");
  const std::size_t rr = static_cast<std::size_t>(r) * r;
  if (in.c % rr != 0) {
    throw NnError(NnErrc::kChannelNotDivisible,
                  std::to_string(in.c) + " channels not divisible by r^2=" + std::to_string(rr));
  }
  const std::size_t oc = in.c / rr, oh = in.h * r, ow = in.w * r;
  Tensor out({oc, oh, ow});
  for (std::size_t c = 0; c < oc; ++c) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        const std::size_t src_c = c * rr + (y % r) * r + (x % r);
        out[(c * oh + y) * ow + x] = input[(src_c * in.h + y / r) * in.w + x / r];
      }
    }
  }
  return out;
}

Tensor pixel_unshuffle(const Tensor& input, int r) {
  const Chw in = chw_of(input);
  if (r < 1 || in.h % r != 0 || in.w % r != 0) {
    throw NnError(NnErrc::kShapeMismatch, "unshuffle needs spatial dims divisible by r");
  }
  const std::size_t rr = static_cast<std::size_t>(r) * r;
  const std::size_t oh = in.h / r, ow = in.w / r;
  Tensor out({in.c * rr, oh, ow});
  for (std::size_t c = 0; c < in.c; ++c) {
    for (std::size_t y = 0; y < in.h; ++y) {
      for (std::size_t x = 0; x < in.w; ++x) {
        const std::size_t dst_c = c * rr + (y % r) * r + (x % r);
        out[(dst_c * oh + y / r) * ow + x / r] = input[(c * in.h + y) * in.w + x];
      }
    }
  }
  return out;
}

Tensor apply_activation(const Tensor& input, Activation kind, double slope) {
  return apply_activation(input, kind, Tensor(Dims{1}, std::vector<double>{slope}));
}

Tensor apply_activation(const Tensor& input, Activation kind, const Tensor& slope) {
  Tensor out(input.dims());
  const std::size_t n = input.size();
  switch (kind) {
    case Activation::kRelu:
      for (std::size_t i = 0; i < n; ++i) out[i] = input[i] > 0.0 ? input[i] : 0.0;
      break;
    case Activation::kLeakyRelu: {
      if (slope.size() != 1) throw NnError(NnErrc::kSlopeShapeMismatch, "leaky_relu takes one slope");
      const double a = slope[0];
      for (std::size_t i = 0; i < n; ++i) out[i] = input[i] > 0.0 ? input[i] : a * input[i];
      break;
    }
    case Activation::kPrelu: {
      const Chw s = chw_of(input);
      if (slope.size() != s.c) {
        throw NnError(NnErrc::kSlopeShapeMismatch, "prelu needs " + std::to_string(s.c) +
                                                       " slopes, got " + std::to_string(slope.size()));
      }
      const std::size_t plane = s.h * s.w;
      for (std::size_t c = 0; c < s.c; ++c) {
        for (std::size_t i = c * plane; i < (c + 1) * plane; ++i) {
          out[i] = input[i] > 0.0 ? input[i] : slope[c] * input[i];
        }
      }
      break;
    }
    case Activation::kTanh:
      for (std::size_t i = 0; i < n; ++i) out[i] = std::tanh(input[i]);
      break;
    case Activation::kSigmoid:
      for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 + std::exp(-input[i]));
      break;
  }
  return out;
}

ActivationGrads activation_backward(const Tensor& input, const Tensor& output, Activation kind,
                                    const Tensor& slope, const Tensor& grad_output) {
  check_same_dims(input, grad_output, "activation grad");
  ActivationGrads grads{Tensor(input.dims()), Tensor()};
  const std::size_t n = input.size();
  switch (kind) {
    case Activation::kRelu:
      for (std::size_t i = 0; i < n; ++i) grads.input[i] = input[i] > 0.0 ? grad_output[i] : 0.0;
      break;
    case Activation::kLeakyRelu:
      for (std::size_t i = 0; i < n; ++i) grads.input[i] = input[i] > 0.0 ? grad_output[i] : slope[0] * grad_output[i];
      break;
    case Activation::kPrelu: {
      const Chw s = chw_of(input);
      const std::size_t plane = s.h * s.w;
      grads.slope = Tensor(slope.dims());
      for (std::size_t c = 0; c < s.c; ++c) {
        double acc = 0.0;
        for (std::size_t i = c * plane; i < (c + 1) * plane; ++i) {
          if (input[i] > 0.0) {
            grads.input[i] = grad_output[i];
          } else {
            grads.input[i] = slope[c] * grad_output[i];
            acc += input[i] * grad_output[i];
          }
        }
        grads.slope[c] = acc;
      }
      break;
    }
    case Activation::kTanh:
      for (std::size_t i = 0; i < n; ++i) grads.input[i] = grad_output[i] * (1.0 - output[i] * output[i]);
      break;
    case Activation::kSigmoid:
      for (std::size_t i = 0; i < n; ++i) grads.input[i] = grad_output[i] * output[i] * (1.0 - output[i]);
      break;
  }
  return grads;
}

Tensor batchnorm_inference(const Tensor& input, const Tensor& gamma, const Tensor& beta,
                           const Tensor& mean, const Tensor& var, double eps) {
  const Chw s = chw_of(input);
  for (const Tensor* p : {&gamma, &beta, &mean, &var}) {
    if (p->size() != s.c) shape_error("batchnorm parameter size mismatch for " + std::to_string(s.c) + " channels");
  }
  Tensor out(input.dims());
  const std::size_t plane = s.h * s.w;
  for (std::size_t c = 0; c < s.c; ++c) {
    const double scale = gamma[c] / std::sqrt(var[c] + eps);
    const double shift = beta[c] - mean[c] * scale;
    for (std::size_t i = c * plane; i < (c + 1) * plane; ++i) out[i] = input[i] * scale + shift;
  }
  return out;
}

BatchNormGrads batchnorm_backward(const Tensor& input, const Tensor& gamma, const Tensor& mean,
                                  const Tensor& var, double eps, const Tensor& grad_output) {
  const Chw s = chw_of(input);
  check_same_dims(input, grad_output, "batchnorm grad");
  BatchNormGrads grads{Tensor(input.dims()), Tensor(gamma.dims()), Tensor(gamma.dims())};
  const std::size_t plane = s.h * s.w;
  for (std::size_t c = 0; c < s.c; ++c) {
    const double inv_std = 1.0 / std::sqrt(var[c] + eps);
    double g_gamma = 0.0, g_beta = 0.0;
    for (std::size_t i = c * plane; i < (c + 1) * plane; ++i) {
      grads.input[i] = grad_output[i] * gamma[c] * inv_std;
      g_gamma += grad_output[i] * (input[i] - mean[c]) * inv_std;
      g_beta += grad_output[i];
    }
    grads.gamma[c] = g_gamma;
    grads.beta[c] = g_beta;
  }
  return grads;
}

Tensor add(const Tensor& a, const Tensor& b) {
  check_same_dims(a, b, "add operands");
  Tensor out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Tensor maxpool2(const Tensor& input) {
  const Chw s = chw_of(input);
  const std::size_t oh = s.h / 2, ow = s.w / 2;
  if (oh == 0 || ow == 0) throw NnError(NnErrc::kEmptyOutput, "maxpool2 on input smaller than 2x2");
  Tensor out({s.c, oh, ow});
  for (std::size_t c = 0; c < s.c; ++c) {
    const double* plane = input.data() + c * s.h * s.w;
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        const double* p = plane + 2 * y * s.w + 2 * x;
        out[(c * oh + y) * ow + x] = std::max({p[0], p[1], p[s.w], p[s.w + 1]});
      }
    }
  }
  return out;
}

Tensor maxpool2_backward(const Tensor& input, const Tensor& grad_output) {
  const Chw s = chw_of(input);
  const std::size_t oh = s.h / 2, ow = s.w / 2;
  if (grad_output.dims() != Dims{s.c, oh, ow}) shape_error("maxpool2 grad_output dims");
  Tensor grad(input.dims());
  for (std::size_t c = 0; c < s.c; ++c) {
    const std::size_t base = c * s.h * s.w;
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        const std::size_t cand[4] = {base + 2 * y * s.w + 2 * x, base + 2 * y * s.w + 2 * x + 1,
                                     base + (2 * y + 1) * s.w + 2 * x, base + (2 * y + 1) * s.w + 2 * x + 1};
        std::size_t best = cand[0];
        for (std::size_t k = 1; k < 4; ++k) {
          if (input[cand[k]] > input[best]) best = cand[k];
        }
        grad[best] += grad_output[(c * oh + y) * ow + x];
      }
    }
  }
  return grad;
}

Tensor global_mean(const Tensor& input) {
  const Chw s = chw_of(input);
  Tensor out({s.c, 1, 1});
  const std::size_t plane = s.h * s.w;
  for (std::size_t c = 0; c < s.c; ++c) {
    double acc = 0.0;
    for (std::size_t i = c * plane; i < (c + 1) * plane; ++i) acc += input[i];
    out[c] = acc / static_cast<double>(plane);
  }
  return out;
}

Tensor global_mean_backward(const Tensor& input, const Tensor& grad_output) {
  const Chw s = chw_of(input);
  if (grad_output.size() != s.c) shape_error("global_mean grad_output dims");
  Tensor grad(input.dims());
  const std::size_t plane = s.h * s.w;
  for (std::size_t c = 0; c < s.c; ++c) {
    const double g = grad_output[c] / static_cast<double>(plane);
    for (std::size_t i = c * plane; i < (c + 1) * plane; ++i) grad[i] = g;
  }
  return grad;
}

namespace {

Tensor dense_kernel(const Tensor& input, const Tensor& weight) {
  if (weight.rank() != 2 || weight.dim(1) != input.size()) {
    shape_error("dense weight " + dims_to_string(weight.dims()) + " does not fit input of " +
                std::to_string(input.size()) + " values");
  }
  return weight.reshaped({weight.dim(0), weight.dim(1), 1, 1});
}

}  // namespace

Tensor dense(const Tensor& input, const Tensor& weight, const Tensor& bias) {
  const Tensor kernel = dense_kernel(input, weight);
  return conv2d(input.reshaped({input.size(), 1, 1}), kernel, bias, 1, 0);
}

ConvGrads dense_backward(const Tensor& input, const Tensor& weight, const Tensor& grad_output) {
  const Tensor kernel = dense_kernel(input, weight);
  ConvGrads g = conv2d_backward(input.reshaped({input.size(), 1, 1}), kernel, 1, 0, grad_output);
  g.input = g.input.reshaped(input.dims());
  g.weight = g.weight.reshaped(weight.dims());
  return g;
}

}  // namespace survx::nn
