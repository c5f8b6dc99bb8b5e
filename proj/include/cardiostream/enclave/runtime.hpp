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

#include <optional>
#include <string_view>

#include "cardiostream/enclave/attestation.hpp"
#include "cardiostream/enclave/envelope.hpp"
#include "cardiostream/hrv/types.hpp"

namespace cardiostream::enclave {

enum class RuntimeState { kCreated, kAttested, kSessioned };

std::string_view runtime_state_name(RuntimeState state);

// Simulated enclave hosting one analysis algorithm. The only accepted call
// order is attest -> establish_session -> ecall*; anything else throws and
// leaves the state untouched. Calls must be externally serialized.
class TrustedRuntime {
 public:
  explicit TrustedRuntime(hrv::AnalysisAlgorithm algorithm,
                          std::string_view build_tag = kEngineBuildTag);

  TrustedRuntime(TrustedRuntime&&) noexcept = default;
  TrustedRuntime& operator=(TrustedRuntime&&) noexcept = default;
  TrustedRuntime(const TrustedRuntime&) = delete;
  TrustedRuntime& operator=(const TrustedRuntime&) = delete;

  RuntimeState state() const { return state_; }
  const hrv::AnalysisAlgorithm& algorithm() const { return algorithm_; }
  const EnclaveMeasurement& measurement() const { return measurement_; }
  std::optional<KeyId> session_key_id() const;

  // kInvalidState unless Created; kMeasurementMismatch when `expected`
  // differs from this runtime's measurement.
  AttestationReport attest(const EnclaveMeasurement& expected, const ChallengeNonce& challenge);

  // kInvalidState unless Attested; kInvalidReport unless `report` is the one
  // this runtime issued and its binding tag verifies.
  void establish_session(const AttestationReport& report, const KeyShare& verifier_share);

  // Call gate. kCallGateRefused unless Sessioned. Otherwise always returns a
  // sealed reply: the result, or an error code. Every rejection of the task
  // envelope (malformed, wrong key, bad tag, wrong aad, replay) is reported
  // as kAuthenticationFailure.
  CipherEnvelope ecall(std::span<const std::uint8_t> task_wire);
  CipherEnvelope ecall(const CipherEnvelope& task) { return ecall(task.encode()); }

 private:
  CipherEnvelope reply(const Bytes& payload, const ChannelAad& aad);

  hrv::AnalysisAlgorithm algorithm_;
  EnclaveMeasurement measurement_;
  RuntimeState state_ = RuntimeState::kCreated;
  KeyAgreement agreement_;
  std::optional<AttestationReport> issued_;
  std::optional<SessionKey> session_;
  std::optional<Sealer> reply_sealer_;
  std::optional<std::uint64_t> last_task_counter_;
};

TrustedRuntime create_enclave(hrv::AnalysisAlgorithm algorithm);

// Untrusted loader owning at most one runtime.
class EnclaveHost {
 public:
  // kEnclaveAlreadyLoaded if a runtime exists.
  TrustedRuntime& create(hrv::AnalysisAlgorithm algorithm,
                         std::string_view build_tag = kEngineBuildTag);
  // kNoEnclave before create().
  TrustedRuntime& runtime();
  bool loaded() const { return runtime_.has_value(); }
  void destroy() { runtime_.reset(); }

 private:
  std::optional<TrustedRuntime> runtime_;
};

// The "enclaves disabled" worker: same computation, clear channel.
class PlainWorker {
 public:
  explicit PlainWorker(hrv::AnalysisAlgorithm algorithm) : algorithm_(algorithm) {}
  Bytes call(std::span<const std::uint8_t> task_payload) const;

 private:
  hrv::AnalysisAlgorithm algorithm_;
};

// Verifier-side convenience: challenge, attest, verify, establish. Returns
// the session key held by the trusted driver.
SessionKey attest_and_establish(TrustedRuntime& runtime, const EnclaveMeasurement& expected);

}  // namespace cardiostream::enclave
