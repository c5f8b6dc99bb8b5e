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

#include <string>
#include <string_view>

#include "cardiostream/hrv/types.hpp"

namespace cardiostream::hrv {

// Line-oriented key=value body of a result file:
//   identity  -> one "sample=<t_ms>,<rr>" line per sample
//   sdnn      -> "sdnn_ms=8.165"
//   hrvbands  -> "lf_power=", "hf_power=", "hf_lf_ratio=" (6 decimals)
//   failure   -> "error=<ErrorName>"
std::string format_result_text(const HrvResult& result);
std::string format_outcome_text(const Outcome& outcome);

// Parses a body produced by format_outcome_text for the given algorithm.
// Throws Error(kMalformedRecord) on unparseable input.
Outcome parse_outcome_text(std::string_view text, Algorithm algorithm);

}  // namespace cardiostream::hrv
