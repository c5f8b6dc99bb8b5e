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
#include <optional>

#include "cardiostream/enclave/measurement.hpp"

namespace cardiostream::enclave {

using ChallengeNonce = std::array<std::uint8_t, 16>;
using KeyShare = std::array<std::uint8_t, 32>;    // X25519 public value
using BindingTag = std::array<std::uint8_t, 64>;  // Ed25519 signature
using RootPublicKey = std::array<std::uint8_t, 32>;
using KeyId = std::array<std::uint8_t, 8>;

struct AttestationReport {
  EnclaveMeasurement measurement;
  ChallengeNonce challenge_nonce{};
  KeyShare key_share{};
  BindingTag binding_tag{};

  bool operator==(const AttestationReport&) const = default;
};

// Bytes covered by the binding tag.
Bytes report_body(const EnclaveMeasurement& measurement, const ChallengeNonce& nonce,
                  const KeyShare& key_share);

// Stand-in for the platform attestation service: a static Ed25519 keypair
// derived from a fixed seed. Only the runtime signs; verifiers hold the
// public half.
class AttestationRoot {
 public:
  static const AttestationRoot& fixture();

  const RootPublicKey& public_key() const { return public_key_; }
  BindingTag sign(std::span<const std::uint8_t> message) const;

 private:
  AttestationRoot();
  RootPublicKey public_key_{};
  std::array<std::uint8_t, 64> secret_key_{};
};

bool verify_binding(const AttestationReport& report, const RootPublicKey& root);

struct SessionKey {
  KeyId key_id{};
  std::array<std::uint8_t, 32> secret{};

  bool operator==(const SessionKey&) const = default;
};

// Ephemeral X25519 keypair for one handshake.
class KeyAgreement {
 public:
  KeyAgreement();
  const KeyShare& share() const { return public_; }
  // Shared secret with the peer; throws kInvalidReport on a degenerate share.
  std::array<std::uint8_t, 32> agree(const KeyShare& peer) const;
  void wipe();

 private:
  KeyShare public_{};
  std::array<std::uint8_t, 32> secret_{};
};

// Both ends call this with the same transcript to obtain the same key.
SessionKey derive_session_key(std::span<const std::uint8_t, 32> shared, const KeyShare& enclave_share,
                              const KeyShare& verifier_share, const EnclaveMeasurement& measurement,
                              const ChallengeNonce& nonce);

// Client-side role of the handshake: issues challenges, checks reports and
// derives the session key.
class AttestationVerifier {
 public:
  explicit AttestationVerifier(EnclaveMeasurement expected,
                               RootPublicKey root = AttestationRoot::fixture().public_key());

  // Fresh challenge; supersedes any outstanding one.
  ChallengeNonce challenge();

  // kInvalidReport (bad tag), kMeasurementMismatch, or kStaleNonce (no
  // outstanding challenge or a different one). A verified report consumes
  // the challenge, so replaying it fails with kStaleNonce.
  void verify_report(const AttestationReport& report);

  const KeyShare& key_share() const { return agreement_.share(); }

  // Valid only for the most recently verified report (kInvalidReport otherwise).
  SessionKey derive_session(const AttestationReport& report) const;

 private:
  EnclaveMeasurement expected_;
  RootPublicKey root_;
  KeyAgreement agreement_;
  std::optional<ChallengeNonce> outstanding_;
  std::optional<AttestationReport> verified_;
};

}  // namespace cardiostream::enclave
