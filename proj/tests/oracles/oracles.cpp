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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace survx::oracle {

std::vector<double> conv2d(const std::vector<double>& in, int c, int h, int w, const std::vector<double>& weight,
                           int k, int kh, int kw, const std::vector<double>& bias, int stride, int pad) {
  const int oh = (h + 2 * pad - kh) / stride + 1;
  const int ow = (w + 2 * pad - kw) / stride + 1;
  std::vector<double> out(static_cast<std::size_t>(k) * oh * ow, 0.0);
  for (int ko = 0; ko < k; ++ko) {
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        double acc = bias.empty() ? 0.0 : bias[ko];
        for (int ci = 0; ci < c; ++ci) {
          for (int i = 0; i < kh; ++i) {
            for (int j = 0; j < kw; ++j) {
              const int sy = y * stride - pad + i;
              const int sx = x * stride - pad + j;
              if (sy < 0 || sy >= h || sx < 0 || sx >= w) continue;
              acc += in[(static_cast<std::size_t>(ci) * h + sy) * w + sx] *
                     weight[((static_cast<std::size_t>(ko) * c + ci) * kh + i) * kw + j];
            }
          }
        }
        out[(static_cast<std::size_t>(ko) * oh + y) * ow + x] = acc;
      }
    }
  }
  return out;
}

double keys_cubic(double t, double a) {
  t = std::fabs(t);
  if (t <= 1.0) return (a + 2.0) * t * t * t - (a + 3.0) * t * t + 1.0;
  if (t < 2.0) return a * t * t * t - 5.0 * a * t * t + 8.0 * a * t - 4.0 * a;
  return 0.0;
}

std::vector<double> resize(const std::vector<double>& in, int c, int h, int w, int oh, int ow, bool antialias,
                           double a) {
  const double sy = static_cast<double>(oh) / h;
  const double sx = static_cast<double>(ow) / w;
  const double ky = (antialias && sy < 1.0) ? sy : 1.0;
  const double kx = (antialias && sx < 1.0) ? sx : 1.0;
  std::vector<double> out(static_cast<std::size_t>(c) * oh * ow);
  for (int ch = 0; ch < c; ++ch) {
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        const double cy = (oy + 0.5) / sy - 0.5;
        const double cx = (ox + 0.5) / sx - 0.5;
        const int ry = static_cast<int>(std::ceil(2.0 / ky)) + 2;
        const int rx = static_cast<int>(std::ceil(2.0 / kx)) + 2;
        double acc = 0.0;
        double total = 0.0;
        for (int j = static_cast<int>(std::floor(cy)) - ry; j <= static_cast<int>(std::floor(cy)) + ry; ++j) {
          const double wy = ky * keys_cubic((cy - j) * ky, a);
          if (wy == 0.0) continue;
          const int yy = std::clamp(j, 0, h - 1);
          for (int i = static_cast<int>(std::floor(cx)) - rx; i <= static_cast<int>(std::floor(cx)) + rx; ++i) {
            const double wx = kx * keys_cubic((cx - i) * kx, a);
            if (wx == 0.0) continue;
            const int xx = std::clamp(i, 0, w - 1);
            acc += wy * wx * in[(static_cast<std::size_t>(ch) * h + yy) * w + xx];
            total += wy * wx;
          }
        }
        out[(static_cast<std::size_t>(ch) * oh + oy) * ow + ox] = std::clamp(acc / total, 0.0, 1.0);
      }
    }
  }
  return out;
}

double mse(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - y[i]) * (x[i] - y[i]);
  return acc / static_cast<double>(x.size());
}

double ssim(const std::vector<double>& x, const std::vector<double>& y, int h, int w, int window, double sigma,
            double k1, double k2) {
  std::vector<double> g(static_cast<std::size_t>(window) * window);
  const double half = (window - 1) / 2.0;
  double gsum = 0.0;
  for (int i = 0; i < window; ++i) {
    for (int j = 0; j < window; ++j) {
      const double d2 = (i - half) * (i - half) + (j - half) * (j - half);
      g[static_cast<std::size_t>(i) * window + j] = std::exp(-d2 / (2.0 * sigma * sigma));
      gsum += g[static_cast<std::size_t>(i) * window + j];
    }
  }
  for (auto& v : g) v /= gsum;
  const double c1 = k1 * k1;
  const double c2 = k2 * k2;
  double total = 0.0;
  int count = 0;
  for (int y0 = 0; y0 + window <= h; ++y0) {
    for (int x0 = 0; x0 + window <= w; ++x0) {
      double mx = 0.0;
      double my = 0.0;
      for (int i = 0; i < window; ++i) {
        for (int j = 0; j < window; ++j) {
          const double wt = g[static_cast<std::size_t>(i) * window + j];
          mx += wt * x[static_cast<std::size_t>(y0 + i) * w + x0 + j];
          my += wt * y[static_cast<std::size_t>(y0 + i) * w + x0 + j];
        }
      }
      double vx = 0.0;
      double vy = 0.0;
      double cxy = 0.0;
      for (int i = 0; i < window; ++i) {
        for (int j = 0; j < window; ++j) {
          const double wt = g[static_cast<std::size_t>(i) * window + j];
          const double dx = x[static_cast<std::size_t>(y0 + i) * w + x0 + j] - mx;
          const double dy = y[static_cast<std::size_t>(y0 + i) * w + x0 + j] - my;
          vx += wt * dx * dx;
          vy += wt * dy * dy;
          cxy += wt * dx * dy;
        }
      }
      total += (2 * mx * my + c1) * (2 * cxy + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  }
  return total / count;
}

double dists_score(const std::vector<Map>& fx, const std::vector<Map>& fy, double c1, double c2) {
  const double weight = 1.0 / (2.0 * static_cast<double>(fx.size()));
  double similarity = 0.0;
  for (std::size_t m = 0; m < fx.size(); ++m) {
    double tex = 0.0;
    double str = 0.0;
    const std::size_t channels = fx[m].size();
    for (std::size_t c = 0; c < channels; ++c) {
      const auto& a = fx[m][c];
      const auto& b = fy[m][c];
      const double n = static_cast<double>(a.size());
      double ma = 0.0;
      double mb = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
      }
      ma /= n;
      mb /= n;
      double va = 0.0;
      double vb = 0.0;
      double cab = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
        cab += (a[i] - ma) * (b[i] - mb);
      }
      va /= n;
      vb /= n;
      cab /= n;
      tex += (2 * ma * mb + c1) / (ma * ma + mb * mb + c1);
      str += (2 * cab + c2) / (va + vb + c2);
    }
    similarity += weight * (tex / channels) + weight * (str / channels);
  }
  return similarity;
}

double lpips_distance(const std::vector<Map>& fx, const std::vector<Map>& fy, double eps) {
  double dist = 0.0;
  for (std::size_t m = 0; m < fx.size(); ++m) {
    const std::size_t channels = fx[m].size();
    const std::size_t positions = fx[m][0].size();
    double tap = 0.0;
    for (std::size_t p = 0; p < positions; ++p) {
      double na = 0.0;
      double nb = 0.0;
      for (std::size_t c = 0; c < channels; ++c) {
        na += fx[m][c][p] * fx[m][c][p];
        nb += fy[m][c][p] * fy[m][c][p];
      }
      na = std::sqrt(na) + eps;
      nb = std::sqrt(nb) + eps;
      for (std::size_t c = 0; c < channels; ++c) {
        const double d = fx[m][c][p] / na - fy[m][c][p] / nb;
        tap += d * d;
      }
    }
    dist += tap / static_cast<double>(positions);
  }
  return dist;
}

Moments gaussian_moments(const std::vector<std::vector<double>>& samples) {
  const std::size_t n = samples.size();
  const std::size_t d = samples[0].size();
  Moments m;
  m.mean.assign(d, 0.0);
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < d; ++i) m.mean[i] += s[i];
  }
  for (auto& v : m.mean) v /= static_cast<double>(n);
  m.cov.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (const auto& s : samples) acc += (s[i] - m.mean[i]) * (s[j] - m.mean[j]);
      m.cov[i][j] = acc / static_cast<double>(n - 1);
    }
  }
  return m;
}

Eigen jacobi_eigen(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  Eigen e;
  e.vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) e.vectors[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = e.vectors[k][p];
          const double vkq = e.vectors[k][q];
          e.vectors[k][p] = c * vkp - s * vkq;
          e.vectors[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) e.values.push_back(a[i][i]);
  return e;
}

std::vector<std::vector<double>> sqrtm_sym(const std::vector<std::vector<double>>& m) {
  const auto e = jacobi_eigen(m);
  const std::size_t n = m.size();
  std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(e.values[k], 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) r[i][j] += s * e.vectors[i][k] * e.vectors[j][k];
    }
  }
  return r;
}

namespace {

std::vector<std::vector<double>> matmul(const std::vector<std::vector<double>>& a,
                                        const std::vector<std::vector<double>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

}  // namespace

double fid(const Moments& a, const Moments& b) {
  const std::size_t n = a.mean.size();
  double mean_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean_term += (a.mean[i] - b.mean[i]) * (a.mean[i] - b.mean[i]);
  const auto ra = sqrtm_sym(a.cov);
  auto inner = matmul(matmul(ra, b.cov), ra);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) inner[i][j] = inner[j][i] = 0.5 * (inner[i][j] + inner[j][i]);
  }
  const auto root = sqrtm_sym(inner);
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += a.cov[i][i] + b.cov[i][i] - 2.0 * root[i][i];
  return std::max(mean_term + trace, 0.0);
}

}  // namespace survx::oracle
