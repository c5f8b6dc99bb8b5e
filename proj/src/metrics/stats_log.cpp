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

#include "cardiostream/metrics/stats_log.hpp"

namespace cardiostream::metrics {

StatsLog::StatsLog(std::string run_id) : run_id_(std::move(run_id)) {}

StatsLog::~StatsLog() {
  for (auto& c : chunks_) delete c.load(std::memory_order_relaxed);
}

void StatsLog::record(engine::BatchStats stats) {
  std::lock_guard lock(write_mu_);
  const std::size_t n = size_.load(std::memory_order_relaxed);
  const std::size_t chunk = n / kChunkSize;
  if (chunk >= kMaxChunks) throw std::length_error("stats log capacity exceeded");
  Chunk* c = chunks_[chunk].load(std::memory_order_relaxed);
  if (c == nullptr) {
    c = new Chunk();
    chunks_[chunk].store(c, std::memory_order_release);
  }
  c->entries[n % kChunkSize] = std::move(stats);
  size_.store(n + 1, std::memory_order_release);
}

std::vector<engine::BatchStats> StatsLog::snapshot() const {
  const std::size_t n = size_.load(std::memory_order_acquire);
  std::vector<engine::BatchStats> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Chunk* c = chunks_[i / kChunkSize].load(std::memory_order_acquire);
    out.push_back(c->entries[i % kChunkSize]);
  }
  return out;
}

std::shared_ptr<StatsLog> RunRegistry::create_run(const std::string& run_id, RunInfo info) {
  auto log = std::make_shared<StatsLog>(run_id);
  std::unique_lock lock(mu_);
  runs_[run_id] = {log, std::move(info)};
  return log;
}

std::shared_ptr<StatsLog> RunRegistry::find(const std::string& run_id) const {
  std::shared_lock lock(mu_);
  const auto it = runs_.find(run_id);
  if (it == runs_.end()) throw Error(ErrorCode::kUnknownRun, "no run '" + run_id + "'");
  return it->second.first;
}

RunInfo RunRegistry::info(const std::string& run_id) const {
  std::shared_lock lock(mu_);
  const auto it = runs_.find(run_id);
  if (it == runs_.end()) throw Error(ErrorCode::kUnknownRun, "no run '" + run_id + "'");
  return it->second.second;
}

std::vector<std::string> RunRegistry::run_ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : runs_) ids.push_back(id);
  return ids;
}

}  // namespace cardiostream::metrics
