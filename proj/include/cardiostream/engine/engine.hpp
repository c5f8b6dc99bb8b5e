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
#include <memory>
#include <string>
#include <vector>

#include "cardiostream/clock.hpp"
#include "cardiostream/engine/backend.hpp"
#include "cardiostream/engine/sink.hpp"
#include "cardiostream/engine/source.hpp"
#include "cardiostream/metrics/stats_log.hpp"

namespace cardiostream::engine {

struct EngineOptions {
  double scan_period_s = 0.0;  // 0 -> interval / 10
  std::size_t workers = 1;     // backends executing a window's batches in parallel
  BackendOptions backend;
  SinkOptions sink;
  hrv::RecordGuard guard;
};

struct RunReport {
  std::vector<BatchStats> stats;  // one per non-empty (client, window)
  std::vector<Quarantined> quarantined;
  std::vector<fs::path> result_files;
  std::uint64_t windows_closed = 0;
  std::size_t files_ingested = 0;
};

// Micro-batch scheduler. Files are assigned to the window in which a scan
// first observes them: window k covers [start + k*I, start + (k+1)*I).
// A window is executed once the clock passes its end; stop() drains the
// in-flight window.
class StreamingEngine {
 public:
  StreamingEngine(JobSpec job, metrics::StatsLog& log, EngineOptions options = {});
  ~StreamingEngine();

  StreamingEngine(const StreamingEngine&) = delete;
  StreamingEngine& operator=(const StreamingEngine&) = delete;

  // Mounts the source and, for split modes, sets up the trusted side.
  // Throws Error(kAttestationFailed) or Error(kSourceUnavailable).
  void start(std::int64_t now_ms);
  void tick(std::int64_t now_ms);
  void stop(std::int64_t now_ms);

  std::int64_t scan_period_ms() const;
  bool running() const { return running_; }
  const RunReport& report() const { return report_; }

 private:
  void close_window(std::uint64_t window_id);

  JobSpec job_;
  metrics::StatsLog& log_;
  EngineOptions options_;
  std::unique_ptr<SourceScanner> scanner_;
  std::vector<std::unique_ptr<ExecutionBackend>> backends_;
  std::int64_t start_ms_ = 0;
  std::uint64_t current_window_ = 0;
  std::vector<std::string> pending_;
  bool running_ = false;
  RunReport report_;
};

// Drives a StreamingEngine for `duration_s` on `clock`, scanning every scan
// period. `on_tick` runs before each scan (virtual-time co-simulation hook).
RunReport run_streaming(const JobSpec& job, double duration_s, Clock& clock, metrics::StatsLog& log,
                        const EngineOptions& options = {},
                        const std::function<void(std::int64_t)>& on_tick = {});

struct BatchJobResult {
  hrv::Outcome outcome = hrv::Outcome::failure(ErrorCode::kAlgorithmError);
  double elapsed_ms = 0.0;
  std::size_t record_count = 0;
  std::optional<fs::path> result_file;
};

// One static input file through the configured mode, timed end to end
// (backend setup, read, parse, execute, and the result write when
// job.source.result_dir is set).
BatchJobResult run_batch_job(const JobSpec& job, const fs::path& input_file,
                             const EngineOptions& options = {});

}  // namespace cardiostream::engine
