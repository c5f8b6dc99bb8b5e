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

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "cardiostream/error.hpp"
#include "cardiostream/hrv/types.hpp"

namespace cardiostream::engine {

// Baseline: everything in-process. SplitPlain: untrusted host plus trusted
// component over a clear channel. SplitEncrypted: same split, attested and
// sealed.
enum class ExecutionMode : std::uint8_t { kBaseline, kSplitPlain, kSplitEncrypted };

inline constexpr ExecutionMode kAllModes[] = {ExecutionMode::kBaseline, ExecutionMode::kSplitPlain,
                                              ExecutionMode::kSplitEncrypted};

// Short CLI names.
inline std::string_view mode_name(ExecutionMode mode) {
  switch (mode) {
    case ExecutionMode::kBaseline:
      return "baseline";
    case ExecutionMode::kSplitPlain:
      return "split";
    case ExecutionMode::kSplitEncrypted:
      return "enclave";
  }
  return "unknown";
}

inline ExecutionMode parse_mode(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "baseline") return ExecutionMode::kBaseline;
  if (s == "split" || s == "splitplain") return ExecutionMode::kSplitPlain;
  if (s == "enclave" || s == "splitencrypted") return ExecutionMode::kSplitEncrypted;
  throw Error(ErrorCode::kInvalidArgument, "unknown execution mode '" + std::string(name) + "'");
}

struct BatchStats {
  std::string client_id;
  std::uint64_t window_id = 0;
  std::size_t record_count = 0;
  double processing_time_ms = 0.0;  // batch formation to result durably written
  ExecutionMode mode = ExecutionMode::kBaseline;
  hrv::Algorithm algorithm = hrv::Algorithm::kIdentity;
  ErrorCode status = ErrorCode::kOk;

  bool ok() const { return status == ErrorCode::kOk; }
};

}  // namespace cardiostream::engine
