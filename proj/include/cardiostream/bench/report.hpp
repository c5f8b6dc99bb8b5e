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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cardiostream/engine/types.hpp"

namespace cardiostream::bench {

namespace fs = std::filesystem;

struct BenchReportRow {
  std::string workload;
  engine::ExecutionMode mode = engine::ExecutionMode::kBaseline;
  hrv::Algorithm algorithm = hrv::Algorithm::kIdentity;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
  std::optional<double> slowdown;  // empty until a Baseline row exists
  bool failed = false;
  std::string error;  // kept in memory only
};

// Fills `slowdown` as mean / Baseline mean of the same (workload, algorithm).
void compute_slowdowns(std::vector<BenchReportRow>& rows);

// CSV: workload,mode,algorithm,mean_ms,stddev_ms,slowdown. Failed rows carry
// "nan" timings and slowdown "failed"; an unknown slowdown is left empty.
std::string format_report_csv(const std::vector<BenchReportRow>& rows);
std::vector<BenchReportRow> parse_report_csv(const std::string& text);
std::vector<BenchReportRow> read_report(const fs::path& path);
void write_report(const fs::path& path, const std::vector<BenchReportRow>& rows);

struct ComparisonRow {
  std::string workload;
  hrv::Algorithm algorithm = hrv::Algorithm::kIdentity;
  double baseline_ms = 0.0;
  std::optional<double> split_factor;    // SplitPlain / Baseline
  std::optional<double> enclave_factor;  // SplitEncrypted / Baseline
  std::optional<double> enclave_vs_split;
  double max_cv = 0.0;  // largest stddev / mean over the modes present
  bool variance_flag = false;
};

struct Comparison {
  std::vector<ComparisonRow> rows;  // workload table order, then algorithm
  std::optional<std::string> variance_threshold_workload;
};

// Throws Error(kMissingBaseline) when some (workload, algorithm) lacks a
// successful Baseline row.
Comparison compare_modes(const std::vector<BenchReportRow>& report, double cv_threshold = 0.25);

// workload,algorithm,baseline_ms,split_slowdown,enclave_slowdown,enclave_vs_split,max_cv,variance_flag
std::string format_comparison_csv(const Comparison& comparison);

}  // namespace cardiostream::bench
