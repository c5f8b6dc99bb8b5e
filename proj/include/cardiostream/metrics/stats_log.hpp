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

#include <array>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cardiostream/engine/types.hpp"

namespace cardiostream::metrics {

// Append-only log of batch statistics for one run.
//
// Appends are serialized among writers. Readers never take the writer lock:
// entries live in fixed-size chunks that are never moved, and the published
// size is the only synchronization point, so a reader always sees a
// consistent prefix.
class StatsLog {
 public:
  explicit StatsLog(std::string run_id);
  ~StatsLog();

  StatsLog(const StatsLog&) = delete;
  StatsLog& operator=(const StatsLog&) = delete;

  const std::string& run_id() const { return run_id_; }

  void record(engine::BatchStats stats);
  std::size_t size() const { return size_.load(std::memory_order_acquire); }
  std::vector<engine::BatchStats> snapshot() const;

  static constexpr std::size_t kChunkSize = 1024;
  static constexpr std::size_t kMaxChunks = 4096;

 private:
  struct Chunk {
    std::array<engine::BatchStats, kChunkSize> entries;
  };

  std::string run_id_;
  std::mutex write_mu_;
  std::array<std::atomic<Chunk*>, kMaxChunks> chunks_{};
  std::atomic<std::size_t> size_{0};
};

// Descriptive labels attached to a run for its summary.
struct RunInfo {
  engine::ExecutionMode mode = engine::ExecutionMode::kBaseline;
  hrv::Algorithm algorithm = hrv::Algorithm::kIdentity;
  std::string load_label;
};

class RunRegistry {
 public:
  // Replaces any previous run with the same id.
  std::shared_ptr<StatsLog> create_run(const std::string& run_id, RunInfo info = {});
  // Throws Error(kUnknownRun).
  std::shared_ptr<StatsLog> find(const std::string& run_id) const;
  RunInfo info(const std::string& run_id) const;
  std::vector<std::string> run_ids() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::pair<std::shared_ptr<StatsLog>, RunInfo>> runs_;
};

}  // namespace cardiostream::metrics
