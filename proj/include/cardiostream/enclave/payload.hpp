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

#include "cardiostream/enclave/crypto.hpp"
#include "cardiostream/engine/micro_batch.hpp"
#include "cardiostream/hrv/types.hpp"

namespace cardiostream::enclave {

// Plaintext carried inside task envelopes: magic "CST1", client id, window
// id, window start, record count, then the 23-byte records verbatim. File
// names are not part of the payload.
Bytes encode_task(const engine::MicroBatch& batch);
// Throws Error(kMalformedEnvelope) or Error(kMalformedRecord).
engine::MicroBatch decode_task(std::span<const std::uint8_t> payload);

// Reply plaintext: magic "CSR1", error code, algorithm kind, result body.
// Doubles travel as raw IEEE-754 bits so replies compare bitwise.
Bytes encode_reply(const hrv::Outcome& outcome);
hrv::Outcome decode_reply(std::span<const std::uint8_t> payload);

// The computation behind the call gate: decode task, run, encode reply.
// Never throws; decoding failures come back as an error reply.
Bytes execute_task(hrv::Algorithm algorithm, std::span<const std::uint8_t> task_payload);

}  // namespace cardiostream::enclave
