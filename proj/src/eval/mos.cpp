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

#include "survx/eval/mos.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

#include "survx/eval/csv.hpp"

namespace survx::eval {

std::vector<MosRecord> ingest_mos(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() || lines.front() != kMosHeader) {
    throw EvalError(EvalErrc::kBadHeader, "MOS CSV must start with '" + std::string(kMosHeader) + "'", 1);
  }
  std::vector<MosRecord> records;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int row = static_cast<int>(i) + 1;
    if (lines[i].empty()) continue;
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != 4) {
      throw EvalError(EvalErrc::kMalformedRow, "row " + std::to_string(row) + ": expected 4 fields", row);
    }
    MosRecord r{fields[0], fields[1], fields[2], 0};
    if (r.rater_id.empty() || r.image_id.empty() || r.method_id.empty()) {
      throw EvalError(EvalErrc::kMalformedRow, "row " + std::to_string(row) + ": empty id", row);
    }
    const std::string& s = fields[3];
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), r.score);
    if (ec != std::errc() || end != s.data() + s.size()) {
      throw EvalError(EvalErrc::kMalformedRow, "row " + std::to_string(row) + ": score '" + s + "' is not an integer",
                      row);
    }
    if (r.score < kMinScore || r.score > kMaxScore) {
      throw EvalError(EvalErrc::kScoreOutOfRange,
                      "row " + std::to_string(row) + ": score " + s + " outside 1-5", row);
    }
    if (!seen.emplace(r.rater_id, r.image_id, r.method_id).second) {
      throw EvalError(EvalErrc::kDuplicateRating,
                      "row " + std::to_string(row) + ": duplicate rating by '" + r.rater_id + "'", row);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string export_mos_csv(const std::vector<MosRecord>& records) {
  std::string out = std::string(kMosHeader) + "\n";
  for (const auto& r : records) {
    out += csv_join({r.rater_id, r.image_id, r.method_id, std::to_string(r.score)}) + "\n";
  }
  return out;
}

MosAggregate aggregate_mos(const std::vector<MosRecord>& records) {
  if (records.empty()) throw EvalError(EvalErrc::kEmpty, "no MOS records to aggregate");
  MosAggregate agg;
  // Sums are accumulated as integers.
  std::map<std::pair<std::string, std::string>, long> cell_sums;
  std::map<std::string, long> method_sums;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.image_id, r.method_id);
    cell_sums[key] += r.score;
    ++agg.cells[key].n;
    method_sums[r.method_id] += r.score;
    auto& pool = agg.methods[r.method_id];
    ++pool.n;
    pool.scores.push_back(r.score);
  }
  for (auto& [key, cell] : agg.cells) cell.mean = static_cast<double>(cell_sums[key]) / static_cast<double>(cell.n);
  for (auto& [method, pool] : agg.methods) {
    pool.mean = static_cast<double>(method_sums[method]) / static_cast<double>(pool.n);
    std::sort(pool.scores.begin(), pool.scores.end());
  }
  return agg;
}

}  // namespace survx::eval
