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

#include <set>
#include <string>
#include <vector>

#include "cardiostream/engine/config.hpp"
#include "cardiostream/engine/micro_batch.hpp"

namespace cardiostream::engine {

// Complete ingest files not yet in `seen`, sorted by name. Ignores
// directories, hidden files, ".part" files and names not matching the
// client pattern. Throws Error(kSourceUnavailable) if the directory is gone.
std::vector<std::string> scan_source(const StreamSourceConfig& config,
                                     const std::set<std::string>& seen);

// Stateful wrapper: each file is reported at most once.
class SourceScanner {
 public:
  explicit SourceScanner(StreamSourceConfig config) : config_(std::move(config)) {}
  std::vector<std::string> poll();
  std::size_t seen_count() const { return seen_.size(); }

 private:
  StreamSourceConfig config_;
  std::set<std::string> seen_;
};

struct Quarantined {
  std::string file;
  std::string reason;
};

struct FormedBatches {
  std::vector<MicroBatch> batches;  // one per client with data, ordered by client id
  std::vector<Quarantined> quarantined;
};

inline constexpr std::string_view kQuarantineDir = "quarantine";

// Groups new files by client and parses them. A file with any malformed
// record, non-increasing timestamps or a timestamp already taken by another
// file of the same batch is moved to <ingest_dir>/quarantine/ as a whole and
// contributes nothing.
FormedBatches form_batches(const StreamSourceConfig& config, const std::vector<std::string>& new_files,
                           std::uint64_t window_id, std::int64_t window_start_ms,
                           const hrv::RecordGuard& guard = {});

}  // namespace cardiostream::engine
