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

#include "cardiostream/enclave/attestation.hpp"

#include <sodium.h>

#include "cardiostream/error.hpp"

namespace cardiostream::enclave {
namespace {

constexpr std::string_view kRootSeed = "cardiostream attestation root 01";
static_assert(kRootSeed.size() == crypto_sign_SEEDBYTES);

}  // namespace

Bytes report_body(const EnclaveMeasurement& measurement, const ChallengeNonce& nonce,
                  const KeyShare& key_share) {
  Bytes body;
  put_bytes(body, as_bytes("cardiostream.attest.v1"));
  put_bytes(body, measurement.digest);
  put_bytes(body, nonce);
  put_bytes(body, key_share);
  return body;
}

AttestationRoot::AttestationRoot() {
  ensure_crypto_ready();
  crypto_sign_seed_keypair(public_key_.data(), secret_key_.data(),
                           reinterpret_cast<const unsigned char*>(kRootSeed.data()));
}

const AttestationRoot& AttestationRoot::fixture() {
  static const AttestationRoot root;
  return root;
}

BindingTag AttestationRoot::sign(std::span<const std::uint8_t> message) const {
  BindingTag tag{};
  crypto_sign_detached(tag.data(), nullptr, message.data(), message.size(), secret_key_.data());
  return tag;
}

bool verify_binding(const AttestationReport& report, const RootPublicKey& root) {
  ensure_crypto_ready();
  const auto body = report_body(report.measurement, report.challenge_nonce, report.key_share);
  return crypto_sign_verify_detached(report.binding_tag.data(), body.data(), body.size(),
                                     root.data()) == 0;
}

KeyAgreement::KeyAgreement() {
  random_fill(secret_);
  crypto_scalarmult_base(public_.data(), secret_.data());
}

std::array<std::uint8_t, 32> KeyAgreement::agree(const KeyShare& peer) const {
  std::array<std::uint8_t, 32> shared{};
  if (crypto_scalarmult(shared.data(), secret_.data(), peer.data()) != 0) {
    throw Error(ErrorCode::kInvalidReport, "degenerate key share");
  }
  return shared;
}

void KeyAgreement::wipe() { sodium_memzero(secret_.data(), secret_.size()); }

SessionKey derive_session_key(std::span<const std::uint8_t, 32> shared, const KeyShare& enclave_share,
                              const KeyShare& verifier_share, const EnclaveMeasurement& measurement,
                              const ChallengeNonce& nonce) {
  Bytes transcript;
  put_bytes(transcript, as_bytes("cardiostream.session.v1"));
  put_bytes(transcript, enclave_share);
  put_bytes(transcript, verifier_share);
  put_bytes(transcript, measurement.digest);
  put_bytes(transcript, nonce);

  std::array<std::uint8_t, 40> okm{};
  crypto_generichash(okm.data(), okm.size(), transcript.data(), transcript.size(), shared.data(),
                     shared.size());
  SessionKey key;
  std::copy_n(okm.begin(), 32, key.secret.begin());
  std::copy_n(okm.begin() + 32, 8, key.key_id.begin());
  sodium_memzero(okm.data(), okm.size());
  return key;
}

AttestationVerifier::AttestationVerifier(EnclaveMeasurement expected, RootPublicKey root)
    : expected_(expected), root_(root) {}

ChallengeNonce AttestationVerifier::challenge() {
  ChallengeNonce nonce{};
  random_fill(nonce);
  outstanding_ = nonce;
  verified_.reset();
  return nonce;
}

void AttestationVerifier::verify_report(const AttestationReport& report) {
  if (!verify_binding(report, root_)) {
    throw Error(ErrorCode::kInvalidReport, "binding tag does not verify");
  }
  if (!(report.measurement == expected_)) {
    throw Error(ErrorCode::kMeasurementMismatch, "report measurement " + report.measurement.hex());
  }
  if (!outstanding_ || !secure_equal(*outstanding_, report.challenge_nonce)) {
    throw Error(ErrorCode::kStaleNonce, "report does not answer the outstanding challenge");
  }
  outstanding_.reset();
  verified_ = report;
}

SessionKey AttestationVerifier::derive_session(const AttestationReport& report) const {
  if (!verified_ || !(*verified_ == report)) {
    throw Error(ErrorCode::kInvalidReport, "report was not verified");
  }
  const auto shared = agreement_.agree(report.key_share);
  return derive_session_key(shared, report.key_share, agreement_.share(), report.measurement,
                            report.challenge_nonce);
}

}  // namespace cardiostream::enclave
