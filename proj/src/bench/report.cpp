// Copyright 2026 The cardiostream Authors
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

#include "cardiostream/bench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "cardiostream/bench/workload.hpp"
#include "cardiostream/engine/sink.hpp"

namespace cardiostream::bench {
namespace {

using Key = std::pair<std::string, hrv::Algorithm>;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, int lineno) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidArgument, "report line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
  return v;
}

// Table order for known labels, report order for anything else.
std::size_t workload_rank(const std::string& label, std::size_t fallback) {
  try {
    return WorkloadSpec::parse_label(label).table_index();
  } catch (const Error&) {
    return 1000 + fallback;
  }
}

}  // namespace

void compute_slowdowns(std::vector<BenchReportRow>& rows) {
  std::map<Key, double> baseline;
  for (const auto& r : rows) {
    if (r.mode == engine::ExecutionMode::kBaseline && !r.failed) baseline[{r.workload, r.algorithm}] = r.mean_ms;
  }
  for (auto& r : rows) {
    r.slowdown.reset();
    if (r.failed) continue;
    const auto it = baseline.find({r.workload, r.algorithm});
    if (it != baseline.end() && it->second > 0.0) r.slowdown = r.mean_ms / it->second;
  }
}

std::string format_report_csv(const std::vector<BenchReportRow>& rows) {
  std::string out = "workload,mode,algorithm,mean_ms,stddev_ms,slowdown\n";
  for (const auto& r : rows) {
    out += r.workload + "," + std::string(engine::mode_name(r.mode)) + "," +
           std::string(hrv::algorithm_name(r.algorithm)) + ",";
    if (r.failed) {
      out += "nan,nan,failed\n";
      continue;
    }
    out += fmt("%.6f", r.mean_ms) + "," + fmt("%.6f", r.stddev_ms) + ",";
    if (r.slowdown) out += fmt("%.6f", *r.slowdown);
    out += "\n";
  }
  return out;
}

std::vector<BenchReportRow> parse_report_csv(const std::string& text) {
  std::vector<BenchReportRow> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.starts_with("workload,")) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 6) {
      throw Error(ErrorCode::kInvalidArgument, "report line " + std::to_string(lineno) + ": expected 6 columns");
    }
    BenchReportRow r;
    r.workload = cells[0];
    r.mode = engine::parse_mode(cells[1]);
    r.algorithm = hrv::parse_algorithm(cells[2]);
    r.failed = cells[5] == "failed";
    r.mean_ms = parse_double(cells[3], lineno);
    r.stddev_ms = parse_double(cells[4], lineno);
    if (!r.failed && !cells[5].empty()) r.slowdown = parse_double(cells[5], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<BenchReportRow> read_report(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read report " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_report_csv(text.str());
}

void write_report(const fs::path& path, const std::vector<BenchReportRow>& rows) {
  engine::SinkOptions sink;
  const auto target = path.has_parent_path() ? path : fs::path(".") / path;
  engine::write_file_atomically(target, format_report_csv(rows), sink, ErrorCode::kSinkUnavailable);
}

Comparison compare_modes(const std::vector<BenchReportRow>& report, double cv_threshold) {
  struct Group {
    std::size_t first_seen = 0;
    std::map<engine::ExecutionMode, const BenchReportRow*> modes;
  };
  std::map<Key, Group> groups;
  for (std::size_t i = 0; i < report.size(); ++i) {
    const auto& r = report[i];
    auto [it, inserted] = groups.try_emplace({r.workload, r.algorithm});
    if (inserted) it->second.first_seen = i;
    if (!r.failed) it->second.modes[r.mode] = &r;
  }

  std::vector<std::pair<std::tuple<std::size_t, hrv::Algorithm>, ComparisonRow>> ordered;
  for (const auto& [key, group] : groups) {
    const auto base = group.modes.find(engine::ExecutionMode::kBaseline);
    if (base == group.modes.end() || !(base->second->mean_ms > 0.0)) {
      throw Error(ErrorCode::kMissingBaseline,
                  "no baseline for " + key.first + "/" + std::string(hrv::algorithm_name(key.second)));
    }
    ComparisonRow row;
    row.workload = key.first;
    row.algorithm = key.second;
    row.baseline_ms = base->second->mean_ms;
    for (const auto& [mode, r] : group.modes) {
      if (r->mean_ms > 0.0) row.max_cv = std::max(row.max_cv, r->stddev_ms / r->mean_ms);
      if (mode == engine::ExecutionMode::kSplitPlain) row.split_factor = r->mean_ms / row.baseline_ms;
      if (mode == engine::ExecutionMode::kSplitEncrypted) row.enclave_factor = r->mean_ms / row.baseline_ms;
    }
    if (row.split_factor && row.enclave_factor) row.enclave_vs_split = *row.enclave_factor / *row.split_factor;
    row.variance_flag = row.max_cv > cv_threshold;
    ordered.push_back({{workload_rank(key.first, group.first_seen), key.second}, std::move(row)});
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  Comparison out;
  for (auto& [rank, row] : ordered) {
    if (row.variance_flag && !out.variance_threshold_workload) out.variance_threshold_workload = row.workload;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string format_comparison_csv(const Comparison& comparison) {
  std::string out =
      "workload,algorithm,baseline_ms,split_slowdown,enclave_slowdown,enclave_vs_split,max_cv,variance_flag\n";
  const auto opt = [](const std::optional<double>& v) { return v ? fmt("%.4f", *v) : std::string(); };
  for (const auto& r : comparison.rows) {
    out += r.workload + "," + std::string(hrv::algorithm_name(r.algorithm)) + "," + fmt("%.6f", r.baseline_ms) +
           "," + opt(r.split_factor) + "," + opt(r.enclave_factor) + "," + opt(r.enclave_vs_split) + "," +
           fmt("%.4f", r.max_cv) + "," + (r.variance_flag ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace cardiostream::bench
