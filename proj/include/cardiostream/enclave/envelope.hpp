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
#include <cstdint>
#include <optional>
#include <string>

#include "cardiostream/enclave/attestation.hpp"

namespace cardiostream::enclave {

using EnvelopeNonce = std::array<std::uint8_t, 12>;
using EnvelopeTag = std::array<std::uint8_t, 16>;

enum class Direction : std::uint8_t { kToTrusted = 1, kFromTrusted = 2 };

// Associated data binding an envelope to one (client, window, direction).
struct ChannelAad {
  std::string client_id;
  std::uint64_t window_id = 0;
  Direction direction = Direction::kToTrusted;

  Bytes encode() const;
  // nullopt when the bytes are not a well-formed aad.
  static std::optional<ChannelAad> decode(std::span<const std::uint8_t> bytes);

  bool operator==(const ChannelAad&) const = default;
};

// Wire layout (little-endian lengths):
//   key_id(8) | nonce(12) | aad_len(4) | aad | ct_len(8) | ciphertext | tag(16)
struct CipherEnvelope {
  KeyId key_id{};
  EnvelopeNonce nonce{};
  Bytes aad;
  Bytes ciphertext;
  EnvelopeTag tag{};

  static constexpr std::size_t kOverhead = 8 + 12 + 4 + 8 + 16;

  std::size_t wire_size() const { return kOverhead + aad.size() + ciphertext.size(); }
  Bytes encode() const;
  // Throws Error(kMalformedEnvelope) unless the buffer is exactly one envelope.
  static CipherEnvelope decode(std::span<const std::uint8_t> wire);

  bool operator==(const CipherEnvelope&) const = default;
};

// Nonce = direction(1) | zero(3) | counter(8, LE).
EnvelopeNonce make_nonce(Direction direction, std::uint64_t counter);
Direction nonce_direction(const EnvelopeNonce& nonce);
std::uint64_t nonce_counter(const EnvelopeNonce& nonce);

// Sealing side of one direction of a session. The counter is strictly
// increasing; the last value (2^64 - 1) is never used.
class Sealer {
 public:
  Sealer(SessionKey key, Direction direction, std::uint64_t first_counter = 0);

  // ChaCha20-Poly1305 (IETF) over plaintext, authenticating key_id | aad.
  // Throws Error(kNonceExhausted).
  CipherEnvelope seal(std::span<const std::uint8_t> plaintext, std::span<const std::uint8_t> aad);

  const KeyId& key_id() const { return key_.key_id; }
  std::uint64_t next_counter() const { return counter_; }

 private:
  SessionKey key_;
  Direction direction_;
  std::uint64_t counter_;
};

// kUnknownKeyId when the envelope names a different key, otherwise
// kAuthenticationFailure unless nonce, tag, aad and ciphertext all verify.
// No plaintext is returned on failure.
Bytes open(const CipherEnvelope& envelope, const SessionKey& key, std::span<const std::uint8_t> aad);

}  // namespace cardiostream::enclave
