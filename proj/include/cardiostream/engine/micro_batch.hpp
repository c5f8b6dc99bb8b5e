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

#include <cstdint>
#include <string>
#include <vector>

#include "cardiostream/hrv/types.hpp"

namespace cardiostream::engine {

// One client's samples for one window, processed as a unit.
struct MicroBatch {
  std::string client_id;
  std::uint64_t window_id = 0;
  std::int64_t window_start_ms = 0;
  std::vector<std::string> files;  // ingest file names, untrusted metadata
  hrv::RrSeries samples;

  std::size_t record_count() const { return samples.size(); }
};

}  // namespace cardiostream::engine
