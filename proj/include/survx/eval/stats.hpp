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

#include <span>
#include <vector>

#include "survx/eval/common.hpp"

namespace survx::eval {

inline constexpr double kDefaultAlpha = 0.001;

// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
double regularized_incomplete_beta(double x, double a, double b);
// Two-sided tail probability of Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

WelchResult welch_ttest(std::span<const double> a, std::span<const double> b);

struct MannWhitneyResult {
  double u = 0.0;  // statistic for sample a
  double z = 0.0;
  double p = 1.0;
  bool all_tied = false;
};

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// 1-based ranks with ties sharing their average rank.
std::vector<double> midranks(std::span<const double> values);

struct Correlation {
  double pearson = 0.0;
  double spearman = 0.0;
  std::size_t n = 0;
};

double pearson(std::span<const double> x, std::span<const double> y);
Correlation correlate(std::span<const double> metric_values, std::span<const double> mos_means);

double mean(std::span<const double> v);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> v);
// Linear interpolation between closest ranks on sorted data, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace survx::eval
