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
#include <string>
#include <string_view>
#include <vector>

#include "cardiostream/hrv/types.hpp"

namespace cardiostream::hrv {

// "1546300800000,0857.100\n": 13-digit epoch ms, comma, dddd.ddd, newline.
inline constexpr std::size_t kRecordSize = 23;

using RecordBytes = std::array<char, kRecordSize>;

// Throws Error(kMalformedRecord).
RrSample parse_rr_record(std::string_view line, const RecordGuard& guard = {});

// Throws Error(kInvalidArgument) when the sample does not fit the fixed width.
RecordBytes serialize_rr_record(const RrSample& sample);
void append_rr_record(std::string& out, const RrSample& sample);

// Body of concatenated records. Throws Error(kMalformedRecord) naming the
// offending record index.
std::vector<RrSample> parse_rr_records(std::string_view body, const RecordGuard& guard = {});
std::string serialize_rr_records(std::span<const RrSample> samples);

}  // namespace cardiostream::hrv
