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

#include "cardiostream/enclave/measurement.hpp"

namespace cardiostream::enclave {

EnclaveMeasurement measure_code(const hrv::AnalysisAlgorithm& algorithm,
                                std::span<const std::uint8_t> build_tag) {
  Bytes buf;
  put_bytes(buf, as_bytes("cardiostream.measure.v1"));
  buf.push_back(static_cast<std::uint8_t>(algorithm.kind));
  put_u16(buf, algorithm.version);
  put_u32(buf, static_cast<std::uint32_t>(build_tag.size()));
  put_bytes(buf, build_tag);
  return EnclaveMeasurement{sha256(buf)};
}

}  // namespace cardiostream::enclave
