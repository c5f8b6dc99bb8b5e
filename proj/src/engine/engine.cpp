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

#include "cardiostream/engine/engine.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cardiostream/hrv/record.hpp"

namespace cardiostream::engine {

StreamingEngine::StreamingEngine(JobSpec job, metrics::StatsLog& log, EngineOptions options)
    : job_(std::move(job)), log_(log), options_(std::move(options)) {
  job_.source.validate();
  if (options_.workers == 0) options_.workers = 1;
}

StreamingEngine::~StreamingEngine() = default;

std::int64_t StreamingEngine::scan_period_ms() const {
  const double s = options_.scan_period_s > 0.0 ? options_.scan_period_s : job_.source.batch_interval_s / 10.0;
  return std::max<std::int64_t>(1, std::llround(s * 1000.0));
}

void StreamingEngine::start(std::int64_t now_ms) {
  std::error_code ec;
  if (!fs::is_directory(job_.source.ingest_dir, ec)) {
    throw Error(ErrorCode::kSourceUnavailable, "ingest dir " + job_.source.ingest_dir.string() + " missing");
  }
  backends_.clear();
  for (std::size_t i = 0; i < options_.workers; ++i) {
    backends_.push_back(make_backend(job_.mode, job_.algorithm, options_.backend));
  }
  scanner_ = std::make_unique<SourceScanner>(job_.source);
  start_ms_ = now_ms;
  current_window_ = 0;
  pending_.clear();
  running_ = true;
}

void StreamingEngine::tick(std::int64_t now_ms) {
  if (!running_) throw Error(ErrorCode::kInvalidState, "engine not running");
  const auto interval = job_.source.interval_ms();
  const auto window = static_cast<std::uint64_t>(std::max<std::int64_t>(0, now_ms - start_ms_) / interval);
  while (current_window_ < window) {
    close_window(current_window_);
    ++current_window_;
  }
  auto fresh = scanner_->poll();
  report_.files_ingested += fresh.size();
  pending_.insert(pending_.end(), fresh.begin(), fresh.end());
}

void StreamingEngine::stop(std::int64_t /*now_ms*/) {
  if (!running_) return;
  // Final scan so deposits made after the last tick still land in the
  // in-flight window.
  try {
    auto fresh = scanner_->poll();
    report_.files_ingested += fresh.size();
    pending_.insert(pending_.end(), fresh.begin(), fresh.end());
  } catch (const Error& e) {
    std::clog << "cardiostream: final scan failed: " << e.what() << '\n';
  }
  close_window(current_window_);
  for (auto& b : backends_) b->close_channel();
  backends_.clear();
  scanner_.reset();
  running_ = false;
}

void StreamingEngine::close_window(std::uint64_t window_id) {
  ++report_.windows_closed;
  if (pending_.empty()) return;
  const auto files = std::move(pending_);
  pending_.clear();

  const auto window_start = start_ms_ + static_cast<std::int64_t>(window_id) * job_.source.interval_ms();
  auto formed = form_batches(job_.source, files, window_id, window_start, options_.guard);
  report_.quarantined.insert(report_.quarantined.end(), formed.quarantined.begin(),
                             formed.quarantined.end());

  const auto& batches = formed.batches;
  std::vector<BatchStats> stats(batches.size());
  std::vector<std::optional<fs::path>> written(batches.size());

  auto process = [&](std::size_t i, ExecutionBackend& backend) {
    Stopwatch watch;
    auto exec = execute_batch(job_, batches[i], backend);
    try {
      written[i] = write_result(job_.source.result_dir, batches[i].client_id, window_id, exec.outcome,
                                options_.sink);
    } catch (const Error& e) {
      exec.stats.status = e.code();
    }
    exec.stats.processing_time_ms = watch.elapsed_ms();
    stats[i] = std::move(exec.stats);
  };

  const std::size_t workers = std::min(backends_.size(), batches.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < batches.size(); ++i) process(i, *backends_.front());
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (std::size_t i = w; i < batches.size(); i += workers) process(i, *backends_[w]);
      });
    }
  }

  for (std::size_t i = 0; i < batches.size(); ++i) {
    if (written[i]) report_.result_files.push_back(*written[i]);
    log_.record(stats[i]);
    report_.stats.push_back(std::move(stats[i]));
  }
}

RunReport run_streaming(const JobSpec& job, double duration_s, Clock& clock, metrics::StatsLog& log,
                        const EngineOptions& options, const std::function<void(std::int64_t)>& on_tick) {
  StreamingEngine engine(job, log, options);
  const auto start = clock.now_ms();
  const auto end = start + static_cast<std::int64_t>(std::llround(duration_s * 1000.0));
  engine.start(start);
  try {
    for (auto t = start; t < end; t += engine.scan_period_ms()) {
      clock.sleep_until(t);
      const auto now = clock.now_ms();
      if (on_tick) on_tick(now);
      engine.tick(now);
    }
    clock.sleep_until(end);
    engine.stop(end);
  } catch (...) {
    engine.stop(clock.now_ms());
    throw;
  }
  return engine.report();
}

BatchJobResult run_batch_job(const JobSpec& job, const fs::path& input_file, const EngineOptions& options) {
  BatchJobResult out;
  Stopwatch watch;
  auto backend = make_backend(job.mode, job.algorithm, options.backend);

  std::ifstream in(input_file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSourceUnavailable, "cannot open " + input_file.string());
  std::ostringstream body;
  body << in.rdbuf();

  const auto name = input_file.filename().string();
  MicroBatch batch;
  batch.client_id = job.source.client_pattern.client_of(name).value_or(input_file.stem().string());
  batch.files.push_back(name);
  try {
    batch.samples = hrv::RrSeries(batch.client_id, hrv::parse_rr_records(body.str(), options.guard));
    out.record_count = batch.samples.size();
    out.outcome = execute_batch(job, batch, *backend).outcome;
  } catch (const Error& e) {
    out.outcome = hrv::Outcome::failure(e.code());
  }
  if (!job.source.result_dir.empty()) {
    out.result_file = write_result(job.source.result_dir, batch.client_id, 0, out.outcome, options.sink);
  }
  out.elapsed_ms = watch.elapsed_ms();
  return out;
}

}  // namespace cardiostream::engine
