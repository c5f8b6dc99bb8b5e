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
#include <functional>
#include <string>

#include "cardiostream/hrv/types.hpp"

namespace cardiostream::engine {

namespace fs = std::filesystem;

struct SinkOptions {
  bool durable = true;  // fsync file and directory
  // Fault injection: called with the temp path after the body is written and
  // before the rename. Throwing here simulates a crash at that point.
  std::function<void(const fs::path&)> before_rename;
};

// "<client_id>_<window_id>.out"
std::string result_file_name(const std::string& client_id, std::uint64_t window_id);

// Writes the outcome's key=value body through a hidden temp file and an
// atomic rename, so readers only ever see complete result files. Throws
// Error(kSinkUnavailable); no visible file is left behind on failure.
fs::path write_result(const fs::path& result_dir, const std::string& client_id, std::uint64_t window_id,
                      const hrv::Outcome& outcome, const SinkOptions& options = {});

// Same temp-file + rename protocol for an arbitrary body.
void write_file_atomically(const fs::path& target, std::string_view body, const SinkOptions& options,
                           ErrorCode failure_code);

}  // namespace cardiostream::engine
