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

#include <functional>
#include <vector>

#include "cardiostream/bench/report.hpp"
#include "cardiostream/bench/workload.hpp"

namespace cardiostream::bench {

struct SuiteConfig {
  std::vector<engine::ExecutionMode> modes{std::begin(engine::kAllModes), std::end(engine::kAllModes)};
  std::vector<hrv::Algorithm> algorithms{std::begin(hrv::kAllAlgorithms), std::end(hrv::kAllAlgorithms)};
  std::vector<WorkloadSpec> workloads;
  unsigned repetitions = 5;
  fs::path report;    // rewritten after every configuration; empty disables persistence
  fs::path work_dir;  // generated inputs and scratch result directories
  bool force = false;  // re-run configurations that already have a complete row
  double stream_duration_s = 60.0;
  bool realtime = false;  // SE: drive windows by the system clock
  std::uint64_t seed = 1;
  std::function<void(const BenchReportRow&)> on_row;
};

// One timing in ms for one repetition; throws on failure.
using Measurer = std::function<double(const WorkloadSpec&, engine::ExecutionMode, hrv::Algorithm, unsigned rep)>;

struct SuiteResult {
  std::vector<BenchReportRow> rows;
  std::size_t executed = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
};

// Runs configurations strictly one after another: workload, then algorithm,
// then mode. A failing configuration is recorded and the suite continues.
SuiteResult run_suite(const SuiteConfig& config, const Measurer& measurer = {});

// BE: end-to-end elapsed time of run_batch_job. SE: mean batch processing
// time of a streaming run, first window excluded.
double measure_configuration(const SuiteConfig& config, const WorkloadSpec& spec, engine::ExecutionMode mode,
                             hrv::Algorithm algorithm, unsigned rep);

}  // namespace cardiostream::bench
