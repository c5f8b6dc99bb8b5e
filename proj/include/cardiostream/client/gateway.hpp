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

#include <chrono>
#include <filesystem>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cardiostream/hrv/types.hpp"

namespace cardiostream::client {

namespace fs = std::filesystem;

struct GatewayConfig {
  double batch_period_s = 10.0;
  fs::path deposit_dir;
  double fetch_period_s = 5.0;
  fs::path fetch_dir;
  // Offset of the flush instants: flushes happen at phase_s + k * batch_period_s.
  double phase_s = 0.0;
  unsigned max_retries = 3;
  std::chrono::milliseconds retry_backoff{5};

  // Throws Error(kInvalidArgument).
  void validate() const;
};

struct FlushOptions {
  // Fault injection: called with the ".part" path before the rename.
  std::function<void(const fs::path&)> before_rename;
};

// Deposits `<client_id>_<seq>.csv` through a ".part" file and a rename.
// I/O failures are retried with exponential backoff; after max_retries
// throws Error(kDepositUnavailable). Exceptions from the fault hook
// propagate unchanged and leave only the ".part" file behind.
fs::path gateway_flush(const std::string& client_id, std::span<const hrv::RrSample> samples,
                       const GatewayConfig& config, std::uint64_t seq, const FlushOptions& options = {});

struct FetchedResult {
  std::string file;
  std::uint64_t window_id = 0;
  std::string body;
};

// Complete result files for `client_id` not yet in `seen`, ordered by window.
// Hidden temp files and other clients' results are skipped. Throws
// Error(kFetchUnavailable).
std::vector<FetchedResult> fetch_results(const std::string& client_id, const GatewayConfig& config,
                                         std::set<std::string>& seen);

}  // namespace cardiostream::client
