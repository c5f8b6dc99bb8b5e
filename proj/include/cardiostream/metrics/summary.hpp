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

#include <span>
#include <string>

#include "cardiostream/metrics/stats_log.hpp"

namespace cardiostream::metrics {

struct RunSummary {
  engine::ExecutionMode mode = engine::ExecutionMode::kBaseline;
  hrv::Algorithm algorithm = hrv::Algorithm::kIdentity;
  std::string load_label;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;  // sample (n-1) estimator; 0 when n == 1
  std::size_t n_runs = 0;
};

// Throws Error(kEmptyGroup) for an empty group.
RunSummary summarize(std::span<const double> elapsed_ms, engine::ExecutionMode mode,
                     hrv::Algorithm algorithm, std::string load_label);

// Summary of the successful batches of one run. `skip_first_window` drops
// entries of the run's earliest window (engine warm-up).
RunSummary summarize_run(const StatsLog& log, const RunInfo& info, bool skip_first_window = false);

}  // namespace cardiostream::metrics
