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

#include "cardiostream/engine/types.hpp"

namespace cardiostream::engine {

namespace fs = std::filesystem;

// Ingest files are named <client_id>_<seq>.csv; writers append ".part"
// while a file is incomplete.
struct ClientPattern {
  std::string suffix = ".csv";
  std::string in_progress_suffix = ".part";

  // Client id for a complete ingest file name, nullopt otherwise.
  std::optional<std::string> client_of(const std::string& file_name) const;
  std::optional<std::uint64_t> seq_of(const std::string& file_name) const;
  std::string file_name(const std::string& client_id, std::uint64_t seq) const;
};

struct StreamSourceConfig {
  fs::path ingest_dir;
  fs::path result_dir;
  double batch_interval_s = 10.0;
  ClientPattern client_pattern;

  // Throws Error(kInvalidArgument).
  void validate() const;
  std::int64_t interval_ms() const;
};

struct JobSpec {
  hrv::AnalysisAlgorithm algorithm;
  ExecutionMode mode = ExecutionMode::kBaseline;
  StreamSourceConfig source;
};

// Key=value engine configuration:
//   ingest_dir, result_dir, interval, algorithm, mode, listen, scan_period, run_id
// '#' starts a comment line.
struct EngineConfig {
  JobSpec job;
  std::string listen = "127.0.0.1:8090";
  double scan_period_s = 0.0;  // 0 -> interval / 10
  std::string run_id = "run";

  std::string listen_host() const;
  int listen_port() const;
};

EngineConfig parse_engine_config(const std::string& text);
EngineConfig load_engine_config(const fs::path& path);

}  // namespace cardiostream::engine
