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

#include "cardiostream/enclave/runtime.hpp"

#include <sodium.h>

#include "cardiostream/enclave/payload.hpp"
#include "cardiostream/error.hpp"
#include "cardiostream/hrv/analytics.hpp"

namespace cardiostream::enclave {

std::string_view runtime_state_name(RuntimeState state) {
  switch (state) {
    case RuntimeState::kCreated:
      return "Created";
    case RuntimeState::kAttested:
      return "Attested";
    case RuntimeState::kSessioned:
      return "Sessioned";
  }
  return "Unknown";
}

TrustedRuntime::TrustedRuntime(hrv::AnalysisAlgorithm algorithm, std::string_view build_tag)
    : algorithm_(algorithm), measurement_(measure_code(algorithm, build_tag)) {}

std::optional<KeyId> TrustedRuntime::session_key_id() const {
  if (!session_) return std::nullopt;
  return session_->key_id;
}

AttestationReport TrustedRuntime::attest(const EnclaveMeasurement& expected,
                                         const ChallengeNonce& challenge) {
  if (state_ != RuntimeState::kCreated) {
    throw Error(ErrorCode::kInvalidState,
                "attest in state " + std::string(runtime_state_name(state_)));
  }
  if (!(expected == measurement_)) {
    throw Error(ErrorCode::kMeasurementMismatch,
                "expected " + expected.hex() + ", loaded " + measurement_.hex());
  }
  AttestationReport report;
  report.measurement = measurement_;
  report.challenge_nonce = challenge;
  report.key_share = agreement_.share();
  report.binding_tag =
      AttestationRoot::fixture().sign(report_body(measurement_, challenge, report.key_share));
  issued_ = report;
  state_ = RuntimeState::kAttested;
  return report;
}

void TrustedRuntime::establish_session(const AttestationReport& report,
                                       const KeyShare& verifier_share) {
  if (state_ != RuntimeState::kAttested) {
    throw Error(ErrorCode::kInvalidState,
                "establish_session in state " + std::string(runtime_state_name(state_)));
  }
  if (!verify_binding(report, AttestationRoot::fixture().public_key()) || !issued_ ||
      !(report == *issued_)) {
    throw Error(ErrorCode::kInvalidReport, "report was not issued by this runtime");
  }
  const auto shared = agreement_.agree(verifier_share);
  session_ = derive_session_key(shared, report.key_share, verifier_share, measurement_,
                                report.challenge_nonce);
  reply_sealer_.emplace(*session_, Direction::kFromTrusted);
  agreement_.wipe();
  state_ = RuntimeState::kSessioned;
}

CipherEnvelope TrustedRuntime::reply(const Bytes& payload, const ChannelAad& aad) {
  return reply_sealer_->seal(payload, aad.encode());
}

CipherEnvelope TrustedRuntime::ecall(std::span<const std::uint8_t> task_wire) {
  if (state_ != RuntimeState::kSessioned) {
    throw Error(ErrorCode::kCallGateRefused,
                "ecall in state " + std::string(runtime_state_name(state_)));
  }
  const auto rejected = [this](const ChannelAad& aad) {
    return reply(encode_reply(hrv::Outcome::failure(ErrorCode::kAuthenticationFailure)), aad);
  };

  ChannelAad reply_aad{"", 0, Direction::kFromTrusted};
  CipherEnvelope task;
  try {
    task = CipherEnvelope::decode(task_wire);
  } catch (const Error&) {
    return rejected(reply_aad);
  }
  const auto aad = ChannelAad::decode(task.aad);
  if (!aad || aad->direction != Direction::kToTrusted ||
      nonce_direction(task.nonce) != Direction::kToTrusted) {
    return rejected(reply_aad);
  }
  reply_aad.client_id = aad->client_id;
  reply_aad.window_id = aad->window_id;

  Bytes plaintext;
  try {
    plaintext = open(task, *session_, task.aad);
  } catch (const Error&) {
    return rejected(reply_aad);
  }
  const auto counter = nonce_counter(task.nonce);
  if (last_task_counter_ && counter <= *last_task_counter_) {
    sodium_memzero(plaintext.data(), plaintext.size());
    return rejected(reply_aad);
  }
  last_task_counter_ = counter;

  Bytes result;
  try {
    const auto batch = decode_task(plaintext);
    if (batch.client_id != aad->client_id || batch.window_id != aad->window_id) {
      result = encode_reply(hrv::Outcome::failure(ErrorCode::kAuthenticationFailure));
    } else {
      result = encode_reply(hrv::run_algorithm_checked(algorithm_.kind, batch.samples));
    }
  } catch (const Error& e) {
    result = encode_reply(hrv::Outcome::failure(e.code()));
  }
  sodium_memzero(plaintext.data(), plaintext.size());
  auto sealed = reply(result, reply_aad);
  sodium_memzero(result.data(), result.size());
  return sealed;
}

TrustedRuntime create_enclave(hrv::AnalysisAlgorithm algorithm) { return TrustedRuntime(algorithm); }

TrustedRuntime& EnclaveHost::create(hrv::AnalysisAlgorithm algorithm, std::string_view build_tag) {
  if (runtime_) throw Error(ErrorCode::kEnclaveAlreadyLoaded, "an enclave is already loaded");
  runtime_.emplace(algorithm, build_tag);
  return *runtime_;
}

TrustedRuntime& EnclaveHost::runtime() {
  if (!runtime_) throw Error(ErrorCode::kNoEnclave, "no enclave loaded");
  return *runtime_;
}

Bytes PlainWorker::call(std::span<const std::uint8_t> task_payload) const {
  return execute_task(algorithm_.kind, task_payload);
}

SessionKey attest_and_establish(TrustedRuntime& runtime, const EnclaveMeasurement& expected) {
  AttestationVerifier verifier(expected);
  const auto challenge = verifier.challenge();
  const auto report = runtime.attest(expected, challenge);
  verifier.verify_report(report);
  runtime.establish_session(report, verifier.key_share());
  return verifier.derive_session(report);
}

}  // namespace cardiostream::enclave
