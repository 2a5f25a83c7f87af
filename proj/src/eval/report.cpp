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

#include "survx/eval/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "survx/eval/csv.hpp"

namespace survx::eval {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> rank_methods(const std::map<std::string, double>& values, bool higher_is_better) {
  std::vector<std::pair<std::string, double>> entries(values.begin(), values.end());
  std::stable_sort(entries.begin(), entries.end(), [&](const auto& x, const auto& y) {
    return higher_is_better ? x.second > y.second : x.second < y.second;
  });
  std::vector<std::string> ranking;
  for (const auto& e : entries) ranking.push_back(e.first);
  return ranking;
}

MethodSummary summarize_method(const std::string& id, const MethodPool& pool) {
  MethodSummary s;
  s.method_id = id;
  s.n = pool.n;
  s.mean = pool.mean;
  s.sd = sample_sd(pool.scores);
  s.min = pool.scores.front();
  s.max = pool.scores.back();
  s.q1 = quantile_sorted(pool.scores, 0.25);
  s.median = quantile_sorted(pool.scores, 0.5);
  s.q3 = quantile_sorted(pool.scores, 0.75);
  for (double v : pool.scores) ++s.histogram[static_cast<std::size_t>(v) - kMinScore];
  return s;
}

PairwiseTest pairwise_test(const std::string& a_id, const MethodPool& a, const std::string& b_id,
                           const MethodPool& b, double alpha) {
  PairwiseTest t;
  t.method_a = a_id;
  t.method_b = b_id;
  try {
    const auto w = welch_ttest(a.scores, b.scores);
    t.welch.result = w;
    t.welch.direction = w.t > 0 ? "a>b" : (w.t < 0 ? "a<b" : "a=b");
    t.welch.p_one_sided = w.t == 0 ? 0.5 : w.p / 2.0;
    t.welch.reject = w.p < alpha;
  } catch (const EvalError& e) {
    t.welch.direction = a.mean > b.mean ? "a>b" : (a.mean < b.mean ? "a<b" : "a=b");
    t.welch.note = e.code() == EvalErrc::kTooFewSamples ? "too few samples" : "degenerate variance";
  }
  t.mann_whitney.result = mann_whitney_u(a.scores, b.scores);
  t.mann_whitney.reject = !t.mann_whitney.result.all_tied && t.mann_whitney.result.p < alpha;
  return t;
}

void finish_ranking(MetricSummary& m, const std::vector<std::string>& mos_ranking) {
  m.ranking = rank_methods(m.method_values, m.higher_is_better);
  m.ranking_matches_mos = m.ranking == mos_ranking;
  m.top_matches_mos = !m.ranking.empty() && !mos_ranking.empty() && m.ranking.front() == mos_ranking.front();
  if (m.ranking_matches_mos) {
    m.verdict = m.metric + ": method ranking matches MOS";
  } else if (m.top_matches_mos) {
    m.verdict = m.metric + ": top method matches MOS (" + m.ranking.front() + "), full ranking differs";
  } else {
    m.verdict = m.metric + ": ranking differs from MOS (metric top " +
                (m.ranking.empty() ? std::string("none") : m.ranking.front()) + ", MOS top " + mos_ranking.front() +
                ")";
  }
}

MetricSummary summarize_table(const MetricTable& table, const MosAggregate& agg,
                              const std::vector<std::string>& mos_ranking) {
  MetricSummary m;
  m.metric = table.metric;
  m.higher_is_better = table.higher_is_better;
  m.scope = "image";
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::string, std::pair<double, std::size_t>> sums;
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t skipped = 0;
  for (const auto& cell : table.cells) {
    const auto key = std::make_pair(cell.image_id, cell.method_id);
    const auto it = agg.cells.find(key);
    if (it == agg.cells.end()) {
      throw EvalError(EvalErrc::kIdMismatch, "metric '" + table.metric + "' has image '" + cell.image_id +
                                                 "' / method '" + cell.method_id + "' with no MOS ratings");
    }
    if (!seen.insert(key).second) {
      throw EvalError(EvalErrc::kIdMismatch, "metric '" + table.metric + "' repeats image '" + cell.image_id +
                                                 "' for method '" + cell.method_id + "'");
    }
    if (std::isnan(cell.value)) {
      ++skipped;
      continue;
    }
    // Infinite values (PSNR of an exact copy) still rank the method.
    auto& s = sums[cell.method_id];
    s.first += cell.value;
    ++s.second;
    if (std::isinf(cell.value)) {
      ++skipped;
      continue;
    }
    xs.push_back(cell.value);
    ys.push_back(it->second.mean);
  }
  for (const auto& [method, pool] : agg.methods) {
    (void)pool;
    const auto it = sums.find(method);
    if (it == sums.end()) {
      throw EvalError(EvalErrc::kIdMismatch,
                      "metric '" + table.metric + "' has no values for method '" + method + "'");
    }
    m.method_values[method] = it->second.first / static_cast<double>(it->second.second);
  }
  m.n_pairs = xs.size();
  try {
    const auto c = correlate(xs, ys);
    m.pearson = c.pearson;
    m.spearman = c.spearman;
  } catch (const EvalError& e) {
    m.correlation_note = e.code() == EvalErrc::kInsufficientPairs ? "insufficient pairs" : "zero variance";
  }
  if (skipped > 0) {
    if (!m.correlation_note.empty()) m.correlation_note += "; ";
    m.correlation_note += std::to_string(skipped) + " non-finite values excluded";
  }
  finish_ranking(m, mos_ranking);
  return m;
}

MetricSummary summarize_method_metric(const MethodMetric& metric, const MosAggregate& agg,
                                      const std::vector<std::string>& mos_ranking) {
  MetricSummary m;
  m.metric = metric.metric;
  m.higher_is_better = metric.higher_is_better;
  m.scope = "method";
  for (const auto& [method, value] : metric.values) {
    if (!agg.methods.contains(method)) {
      throw EvalError(EvalErrc::kIdMismatch,
                      "metric '" + metric.metric + "' names method '" + method + "' with no MOS ratings");
    }
    m.method_values[method] = value;
  }
  for (const auto& [method, pool] : agg.methods) {
    (void)pool;
    if (!metric.values.contains(method)) {
      throw EvalError(EvalErrc::kIdMismatch, "metric '" + metric.metric + "' lacks method '" + method + "'");
    }
  }
  m.correlation_note = "method-level metric";
  finish_ranking(m, mos_ranking);
  return m;
}

// Non-finite doubles become the strings "inf", "-inf" and "nan".
Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

double read_number(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw EvalError(EvalErrc::kBadReport, "unexpected string '" + s + "' for a number");
  }
  return j.get<double>();
}

std::optional<double> read_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return read_number(j);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return Json(v).dump();
}

std::string safe_file_component(const std::string& id) {
  std::string out;
  for (char ch : id) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '-' || ch == '_' || ch == '.';
    out += ok ? ch : '_';
  }
  return out;
}

}  // namespace

bool metric_higher_is_better(std::string_view metric) { return metric != "mse" && metric != "fid"; }

EvalReport build_report(const EvalInputs& inputs) {
  if (!(inputs.alpha > 0.0 && inputs.alpha < 1.0)) {
    throw EvalError(EvalErrc::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  const MosAggregate agg = aggregate_mos(inputs.records);
  EvalReport report;
  report.alpha = inputs.alpha;
  report.record_count = inputs.records.size();

  std::map<std::string, double> mos_means;
  for (const auto& [id, pool] : agg.methods) {
    report.methods.push_back(summarize_method(id, pool));
    mos_means[id] = pool.mean;
  }
  report.mos_ranking = rank_methods(mos_means, true);

  for (auto a = agg.methods.begin(); a != agg.methods.end(); ++a) {
    for (auto b = std::next(a); b != agg.methods.end(); ++b) {
      report.pairwise.push_back(pairwise_test(a->first, a->second, b->first, b->second, inputs.alpha));
    }
  }

  std::set<std::string> metric_names;
  auto claim = [&](const std::string& name) {
    if (!metric_names.insert(name).second) {
      throw EvalError(EvalErrc::kIdMismatch, "metric '" + name + "' supplied twice");
    }
  };
  for (const auto& table : inputs.metric_tables) {
    claim(table.metric);
    report.metrics.push_back(summarize_table(table, agg, report.mos_ranking));
  }
  for (const auto& metric : inputs.method_metrics) {
    claim(metric.metric);
    report.metrics.push_back(summarize_method_metric(metric, agg, report.mos_ranking));
  }

  for (const auto& l : inputs.latency) {
    report.latency.push_back({l.model, l.median_ms, l.q1_ms, l.q3_ms, l.iqr_ms, l.repetitions});
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  Json j;
  j["format"] = "survx-eval-report";
  j["version"] = report.version;
  j["alpha"] = number(report.alpha);
  j["record_count"] = report.record_count;

  Json methods = Json::array();
  for (const auto& m : report.methods) {
    Json e;
    e["method_id"] = m.method_id;
    e["n"] = m.n;
    e["mean"] = number(m.mean);
    e["sd"] = number(m.sd);
    e["min"] = number(m.min);
    e["q1"] = number(m.q1);
    e["median"] = number(m.median);
    e["q3"] = number(m.q3);
    e["max"] = number(m.max);
    e["histogram"] = m.histogram;
    methods.push_back(std::move(e));
  }
  j["methods"] = std::move(methods);
  j["mos_ranking"] = report.mos_ranking;

  Json pairs = Json::array();
  for (const auto& p : report.pairwise) {
    Json e;
    e["method_a"] = p.method_a;
    e["method_b"] = p.method_b;
    Json w;
    if (p.welch.result) {
      w["t"] = number(p.welch.result->t);
      w["df"] = number(p.welch.result->df);
      w["p"] = number(p.welch.result->p);
    } else {
      w["t"] = nullptr;
      w["df"] = nullptr;
      w["p"] = nullptr;
    }
    w["p_one_sided"] = number(p.welch.p_one_sided);
    w["direction"] = p.welch.direction;
    w["reject"] = p.welch.reject;
    w["note"] = p.welch.note;
    e["welch"] = std::move(w);
    Json u;
    u["u"] = number(p.mann_whitney.result.u);
    u["z"] = number(p.mann_whitney.result.z);
    u["p"] = number(p.mann_whitney.result.p);
    u["all_tied"] = p.mann_whitney.result.all_tied;
    u["reject"] = p.mann_whitney.reject;
    e["mann_whitney"] = std::move(u);
    pairs.push_back(std::move(e));
  }
  j["pairwise"] = std::move(pairs);

  Json metrics = Json::array();
  for (const auto& m : report.metrics) {
    Json e;
    e["metric"] = m.metric;
    e["higher_is_better"] = m.higher_is_better;
    e["scope"] = m.scope;
    e["n_pairs"] = m.n_pairs;
    e["pearson"] = optional_number(m.pearson);
    e["spearman"] = optional_number(m.spearman);
    e["correlation_note"] = m.correlation_note;
    Json values = Json::object();
    for (const auto& [method, v] : m.method_values) values[method] = number(v);
    e["method_values"] = std::move(values);
    e["ranking"] = m.ranking;
    e["ranking_matches_mos"] = m.ranking_matches_mos;
    e["top_matches_mos"] = m.top_matches_mos;
    e["verdict"] = m.verdict;
    metrics.push_back(std::move(e));
  }
  j["metrics"] = std::move(metrics);

  Json latency = Json::array();
  for (const auto& l : report.latency) {
    Json e;
    e["model"] = l.model;
    e["median_ms"] = number(l.median_ms);
    e["q1_ms"] = number(l.q1_ms);
    e["q3_ms"] = number(l.q3_ms);
    e["iqr_ms"] = number(l.iqr_ms);
    e["repetitions"] = l.repetitions;
    latency.push_back(std::move(e));
  }
  j["latency"] = std::move(latency);
  return j.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format") != "survx-eval-report") throw EvalError(EvalErrc::kBadReport, "not an evaluation report");
    EvalReport r;
    r.version = j.at("version").get<int>();
    if (r.version != kReportVersion) {
      throw EvalError(EvalErrc::kBadReport, "unsupported report version " + std::to_string(r.version));
    }
    r.alpha = read_number(j.at("alpha"));
    r.record_count = j.at("record_count").get<std::size_t>();
    for (const auto& e : j.at("methods")) {
      MethodSummary m;
      m.method_id = e.at("method_id").get<std::string>();
      m.n = e.at("n").get<std::size_t>();
      m.mean = read_number(e.at("mean"));
      m.sd = read_number(e.at("sd"));
      m.min = read_number(e.at("min"));
      m.q1 = read_number(e.at("q1"));
      m.median = read_number(e.at("median"));
      m.q3 = read_number(e.at("q3"));
      m.max = read_number(e.at("max"));
      m.histogram = e.at("histogram").get<std::array<std::size_t, kMaxScore>>();
      r.methods.push_back(std::move(m));
    }
    r.mos_ranking = j.at("mos_ranking").get<std::vector<std::string>>();
    for (const auto& e : j.at("pairwise")) {
      PairwiseTest p;
      p.method_a = e.at("method_a").get<std::string>();
      p.method_b = e.at("method_b").get<std::string>();
      const auto& w = e.at("welch");
      if (!w.at("t").is_null()) {
        p.welch.result = WelchResult{read_number(w.at("t")), read_number(w.at("df")), read_number(w.at("p"))};
      }
      p.welch.p_one_sided = read_number(w.at("p_one_sided"));
      p.welch.direction = w.at("direction").get<std::string>();
      p.welch.reject = w.at("reject").get<bool>();
      p.welch.note = w.at("note").get<std::string>();
      const auto& u = e.at("mann_whitney");
      p.mann_whitney.result.u = read_number(u.at("u"));
      p.mann_whitney.result.z = read_number(u.at("z"));
      p.mann_whitney.result.p = read_number(u.at("p"));
      p.mann_whitney.result.all_tied = u.at("all_tied").get<bool>();
      p.mann_whitney.reject = u.at("reject").get<bool>();
      r.pairwise.push_back(std::move(p));
    }
    for (const auto& e : j.at("metrics")) {
      MetricSummary m;
      m.metric = e.at("metric").get<std::string>();
      m.higher_is_better = e.at("higher_is_better").get<bool>();
      m.scope = e.at("scope").get<std::string>();
      m.n_pairs = e.at("n_pairs").get<std::size_t>();
      m.pearson = read_optional(e.at("pearson"));
      m.spearman = read_optional(e.at("spearman"));
      m.correlation_note = e.at("correlation_note").get<std::string>();
      for (const auto& [method, v] : e.at("method_values").items()) m.method_values[method] = read_number(v);
      m.ranking = e.at("ranking").get<std::vector<std::string>>();
      m.ranking_matches_mos = e.at("ranking_matches_mos").get<bool>();
      m.top_matches_mos = e.at("top_matches_mos").get<bool>();
      m.verdict = e.at("verdict").get<std::string>();
      r.metrics.push_back(std::move(m));
    }
    for (const auto& e : j.at("latency")) {
      r.latency.push_back({e.at("model").get<std::string>(), read_number(e.at("median_ms")),
                           read_number(e.at("q1_ms")), read_number(e.at("q3_ms")), read_number(e.at("iqr_ms")),
                           e.at("repetitions").get<int>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw EvalError(EvalErrc::kBadReport, std::string("malformed report JSON: ") + e.what());
  }
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  auto row = [&](const std::string& section, const std::string& subject, const std::string& field,
                 const std::string& value) { out << csv_join({section, subject, field, value}) << "\n"; };
  out << "section,subject,field,value\n";
  row("report", "", "alpha", format_double(report.alpha));
  row("report", "", "record_count", std::to_string(report.record_count));
  for (const auto& m : report.methods) {
    row("method", m.method_id, "n", std::to_string(m.n));
    row("method", m.method_id, "mean", format_double(m.mean));
    row("method", m.method_id, "sd", format_double(m.sd));
    row("method", m.method_id, "q1", format_double(m.q1));
    row("method", m.method_id, "median", format_double(m.median));
    row("method", m.method_id, "q3", format_double(m.q3));
  }
  for (std::size_t i = 0; i < report.mos_ranking.size(); ++i) {
    row("mos_ranking", report.mos_ranking[i], "rank", std::to_string(i + 1));
  }
  for (const auto& p : report.pairwise) {
    const std::string subject = p.method_a + " vs " + p.method_b;
    if (p.welch.result) {
      row("welch", subject, "t", format_double(p.welch.result->t));
      row("welch", subject, "df", format_double(p.welch.result->df));
      row("welch", subject, "p", format_double(p.welch.result->p));
    }
    row("welch", subject, "p_one_sided", format_double(p.welch.p_one_sided));
    row("welch", subject, "direction", p.welch.direction);
    row("welch", subject, "reject", p.welch.reject ? "true" : "false");
    row("mann_whitney", subject, "u", format_double(p.mann_whitney.result.u));
    row("mann_whitney", subject, "p", format_double(p.mann_whitney.result.p));
    row("mann_whitney", subject, "reject", p.mann_whitney.reject ? "true" : "false");
  }
  for (const auto& m : report.metrics) {
    if (m.pearson) row("metric", m.metric, "pearson", format_double(*m.pearson));
    if (m.spearman) row("metric", m.metric, "spearman", format_double(*m.spearman));
    for (const auto& [method, v] : m.method_values) row("metric", m.metric, "value:" + method, format_double(v));
    row("metric", m.metric, "ranking_matches_mos", m.ranking_matches_mos ? "true" : "false");
    row("metric", m.metric, "verdict", m.verdict);
  }
  for (const auto& l : report.latency) {
    row("latency", l.model, "median_ms", format_double(l.median_ms));
    row("latency", l.model, "iqr_ms", format_double(l.iqr_ms));
    row("latency", l.model, "repetitions", std::to_string(l.repetitions));
  }
  return out.str();
}

std::string distribution_csv(const MethodSummary& method) {
  std::string out = "method_id,score,count,fraction\n";
  for (int s = kMinScore; s <= kMaxScore; ++s) {
    const std::size_t count = method.histogram[static_cast<std::size_t>(s - kMinScore)];
    const double fraction = method.n ? static_cast<double>(count) / static_cast<double>(method.n) : 0.0;
    out += csv_join({method.method_id, std::to_string(s), std::to_string(count), format_double(fraction)}) + "\n";
  }
  return out;
}

void write_report_files(const EvalReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw EvalError(EvalErrc::kInvalidArgument, "cannot write " + path.string());
  };
  write(dir / "report.json", report_to_json(report));
  write(dir / "report.csv", report_to_csv(report));
  for (const auto& m : report.methods) {
    write(dir / ("distribution_" + safe_file_component(m.method_id) + ".csv"), distribution_csv(m));
  }
}

std::vector<MetricTable> parse_metric_table_csv(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty()) throw EvalError(EvalErrc::kBadHeader, "metric table is empty", 1);
  const auto header = split_csv_line(lines.front());
  int image_col = -1;
  int method_col = -1;
  std::vector<std::pair<std::size_t, std::size_t>> metric_cols;  // column, table index
  std::vector<MetricTable> tables;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& name = header[c];
    if (name == "image_id") {
      image_col = static_cast<int>(c);
    } else if (name == "method_id") {
      method_col = static_cast<int>(c);
    } else if (name != "reference_path" && name != "candidate_path") {
      metric_cols.emplace_back(c, tables.size());
      tables.push_back({name, metric_higher_is_better(name), {}});
    }
  }
  if (image_col < 0 || method_col < 0) {
    throw EvalError(EvalErrc::kBadHeader, "metric table needs image_id and method_id columns", 1);
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const int line_no = static_cast<int>(i) + 1;
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != header.size()) {
      throw EvalError(EvalErrc::kMalformedRow, "metric table row " + std::to_string(line_no) + ": wrong field count",
                      line_no);
    }
    for (const auto& [col, t] : metric_cols) {
      double v = 0.0;
      const auto& text = fields[col];
      if (text == "inf") {
        v = std::numeric_limits<double>::infinity();
      } else if (text == "-inf") {
        v = -std::numeric_limits<double>::infinity();
      } else if (text == "nan") {
        v = std::numeric_limits<double>::quiet_NaN();
      } else {
        try {
          std::size_t used = 0;
          v = std::stod(text, &used);
          if (used != text.size()) throw std::invalid_argument(text);
        } catch (const std::exception&) {
          throw EvalError(EvalErrc::kMalformedRow,
                          "metric table row " + std::to_string(line_no) + ": '" + text + "' is not a number", line_no);
        }
      }
      tables[t].cells.push_back({fields[static_cast<std::size_t>(image_col)],
                                 fields[static_cast<std::size_t>(method_col)], v});
    }
  }
  return tables;
}

std::vector<MethodMetric> parse_method_metric_csv(std::string_view csv) {
  const auto lines = split_lines(csv);
  if (lines.empty() || lines.front() != "metric,method_id,value") {
    throw EvalError(EvalErrc::kBadHeader, "method metric table must start with 'metric,method_id,value'", 1);
  }
  std::vector<MethodMetric> metrics;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const int line_no = static_cast<int>(i) + 1;
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 3) {
      throw EvalError(EvalErrc::kMalformedRow, "method metric row " + std::to_string(line_no) + ": expected 3 fields",
                      line_no);
    }
    auto it = std::find_if(metrics.begin(), metrics.end(), [&](const auto& m) { return m.metric == f[0]; });
    if (it == metrics.end()) {
      metrics.push_back({f[0], metric_higher_is_better(f[0]), {}});
      it = std::prev(metrics.end());
    }
    try {
      it->values[f[1]] = std::stod(f[2]);
    } catch (const std::exception&) {
      throw EvalError(EvalErrc::kMalformedRow,
                      "method metric row " + std::to_string(line_no) + ": '" + f[2] + "' is not a number", line_no);
    }
  }
  return metrics;
}

}  // namespace survx::eval
