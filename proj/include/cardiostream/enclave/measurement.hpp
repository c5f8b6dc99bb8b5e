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

#include "cardiostream/enclave/crypto.hpp"
#include "cardiostream/hrv/types.hpp"

namespace cardiostream::enclave {

inline constexpr std::string_view kEngineBuildTag = "cardiostream-engine/1.0";

struct EnclaveMeasurement {
  Digest digest{};

  bool operator==(const EnclaveMeasurement&) const = default;
  std::string hex() const { return to_hex(digest); }
};

// SHA-256 over a length-prefixed encoding of (algorithm, version, build tag).
EnclaveMeasurement measure_code(const hrv::AnalysisAlgorithm& algorithm,
                                std::span<const std::uint8_t> build_tag);

inline EnclaveMeasurement measure_code(const hrv::AnalysisAlgorithm& algorithm,
                                       std::string_view build_tag = kEngineBuildTag) {
  return measure_code(algorithm, as_bytes(build_tag));
}

}  // namespace cardiostream::enclave
