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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "survx/eval/common.hpp"

namespace survx::eval {

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 5;
inline constexpr std::string_view kMosHeader = "rater_id,image_id,method_id,score";

struct MosRecord {
  std::string rater_id;
  std::string image_id;
  std::string method_id;
  int score = 0;

  friend bool operator==(const MosRecord&, const MosRecord&) = default;
};

// Parses the rater_id,image_id,method_id,score CSV. Errors carry the 1-based
// file line (header is line 1). Blank lines are skipped.
std::vector<MosRecord> ingest_mos(std::string_view csv);
std::string export_mos_csv(const std::vector<MosRecord>& records);

struct CellMean {
  double mean = 0.0;
  std::size_t n = 0;
};

struct MethodPool {
  double mean = 0.0;
  std::size_t n = 0;
  std::vector<double> scores;  // sorted ascending
};

struct MosAggregate {
  std::map<std::pair<std::string, std::string>, CellMean> cells;  // (image_id, method_id)
  std::map<std::string, MethodPool> methods;
};

MosAggregate aggregate_mos(const std::vector<MosRecord>& records);

}  // namespace survx::eval
