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

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "survx/eval/latency.hpp"
#include "survx/eval/mos.hpp"
#include "survx/eval/stats.hpp"

namespace survx::eval {

inline constexpr int kReportVersion = 1;

// Per-image metric value for one upscaled image.
struct MetricCell {
  std::string image_id;
  std::string method_id;
  double value = 0.0;
};

struct MetricTable {
  std::string metric;
  bool higher_is_better = true;
  std::vector<MetricCell> cells;
};

// Metrics defined over a whole method's output set, such as FID.
struct MethodMetric {
  std::string metric;
  bool higher_is_better = false;
  std::map<std::string, double> values;
};

// mse and fid rank lower-is-better; every other known metric higher.
bool metric_higher_is_better(std::string_view metric);

struct EvalInputs {
  std::vector<MosRecord> records;
  std::vector<MetricTable> metric_tables;
  std::vector<MethodMetric> method_metrics;
  std::vector<LatencyStats> latency;
  double alpha = kDefaultAlpha;
};

struct MethodSummary {
  std::string method_id;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::array<std::size_t, kMaxScore> histogram{};  // counts of scores 1..5
};

struct WelchEntry {
  std::optional<WelchResult> result;  // empty when the test is undefined
  double p_one_sided = 1.0;           // for the alternative named by direction
  std::string direction;              // "a>b", "a<b" or "a=b"
  bool reject = false;
  std::string note;
};

struct MannWhitneyEntry {
  MannWhitneyResult result;
  bool reject = false;
};

struct PairwiseTest {
  std::string method_a;
  std::string method_b;
  WelchEntry welch;
  MannWhitneyEntry mann_whitney;
};

struct MetricSummary {
  std::string metric;
  bool higher_is_better = true;
  std::string scope;  // "image" or "method"
  std::size_t n_pairs = 0;
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::string correlation_note;
  std::map<std::string, double> method_values;
  std::vector<std::string> ranking;  // best first
  bool ranking_matches_mos = false;
  bool top_matches_mos = false;
  std::string verdict;
};

struct LatencyRow {
  std::string model;
  double median_ms = 0.0;
  double q1_ms = 0.0;
  double q3_ms = 0.0;
  double iqr_ms = 0.0;
  int repetitions = 0;
};

struct EvalReport {
  int version = kReportVersion;
  double alpha = kDefaultAlpha;
  std::size_t record_count = 0;
  std::vector<MethodSummary> methods;
  std::vector<std::string> mos_ranking;  // by mean MOS, best first
  std::vector<PairwiseTest> pairwise;
  std::vector<MetricSummary> metrics;
  std::vector<LatencyRow> latency;
};

EvalReport build_report(const EvalInputs& inputs);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(std::string_view json);
// Long-format table: section,subject,field,value.
std::string report_to_csv(const EvalReport& report);
// score,count,fraction for one method.
std::string distribution_csv(const MethodSummary& method);

// Writes report.json, report.csv and distribution_<method>.csv into dir.
void write_report_files(const EvalReport& report, const std::filesystem::path& dir);

// Score table written by the CLI: image_id,method_id,<metric>...; the
// reference_path and candidate_path columns are ignored if present.
std::vector<MetricTable> parse_metric_table_csv(std::string_view csv);
// metric,method_id,value rows.
std::vector<MethodMetric> parse_method_metric_csv(std::string_view csv);

}  // namespace survx::eval
