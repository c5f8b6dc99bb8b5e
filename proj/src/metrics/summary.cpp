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

#include "cardiostream/metrics/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cardiostream::metrics {

RunSummary summarize(std::span<const double> elapsed_ms, engine::ExecutionMode mode,
                     hrv::Algorithm algorithm, std::string load_label) {
  if (elapsed_ms.empty()) throw Error(ErrorCode::kEmptyGroup, "cannot summarize an empty group");
  RunSummary s;
  s.mode = mode;
  s.algorithm = algorithm;
  s.load_label = std::move(load_label);
  s.n_runs = elapsed_ms.size();

  double sum = 0.0;
  for (double v : elapsed_ms) sum += v;
  s.mean_ms = sum / static_cast<double>(s.n_runs);
  if (s.n_runs >= 2) {
    double ss = 0.0;
    for (double v : elapsed_ms) ss += (v - s.mean_ms) * (v - s.mean_ms);
    s.stddev_ms = std::sqrt(ss / static_cast<double>(s.n_runs - 1));
  }
  return s;
}

RunSummary summarize_run(const StatsLog& log, const RunInfo& info, bool skip_first_window) {
  const auto entries = log.snapshot();
  std::uint64_t first_window = std::numeric_limits<std::uint64_t>::max();
  for (const auto& e : entries) first_window = std::min(first_window, e.window_id);

  std::vector<double> times;
  for (const auto& e : entries) {
    if (!e.ok()) continue;
    if (skip_first_window && e.window_id == first_window) continue;
    times.push_back(e.processing_time_ms);
  }
  return summarize(times, info.mode, info.algorithm, info.load_label);
}

}  // namespace cardiostream::metrics
