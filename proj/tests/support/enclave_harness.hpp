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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cardiostream/clock.hpp"
#include "cardiostream/enclave/attestation.hpp"
#include "cardiostream/enclave/envelope.hpp"
#include "cardiostream/enclave/payload.hpp"
#include "cardiostream/enclave/runtime.hpp"

namespace cardiostream::testing {

inline engine::MicroBatch make_batch(const std::string& client, std::uint64_t window, hrv::RrSeries series) {
  engine::MicroBatch b;
  b.client_id = client;
  b.window_id = window;
  b.window_start_ms = kDefaultEpochMs + static_cast<std::int64_t>(window) * 10000;
  b.samples = hrv::RrSeries(client, std::vector<hrv::RrSample>(series.samples().begin(), series.samples().end()));
  return b;
}

inline enclave::CipherEnvelope seal_task(enclave::Sealer& sealer, const engine::MicroBatch& batch) {
  const enclave::ChannelAad aad{batch.client_id, batch.window_id, enclave::Direction::kToTrusted};
  return sealer.seal(enclave::encode_task(batch), aad.encode());
}

// Driver-side view of a reply; nullopt when it does not authenticate.
inline std::optional<hrv::Outcome> open_reply(const enclave::CipherEnvelope& reply, const enclave::SessionKey& key,
                                              const std::string& client, std::uint64_t window) {
  try {
    const enclave::ChannelAad aad{client, window, enclave::Direction::kFromTrusted};
    return enclave::decode_reply(enclave::open(reply, key, aad.encode()));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Reference model of the documented enclave lifecycle, driven against an
// EnclaveHost. Each step returns the error code observed (kOk on success).
enum class Call { kCreate, kAttest, kEstablish, kEcall };
inline constexpr Call kAllCalls[] = {Call::kCreate, Call::kAttest, Call::kEstablish, Call::kEcall};

inline const char* call_name(Call c) {
  switch (c) {
    case Call::kCreate:
      return "create";
    case Call::kAttest:
      return "attest";
    case Call::kEstablish:
      return "establish_session";
    case Call::kEcall:
      return "ecall";
  }
  return "?";
}

class ProtocolDriver {
 public:
  explicit ProtocolDriver(hrv::AnalysisAlgorithm algorithm)
      : algorithm_(algorithm),
        expected_(enclave::measure_code(algorithm)),
        verifier_(std::make_unique<enclave::AttestationVerifier>(expected_)) {}

  ErrorCode step(Call call) {
    try {
      switch (call) {
        case Call::kCreate:
          host_.create(algorithm_);
          break;
        case Call::kAttest: {
          // Each attempt uses its own verifier; a refused attempt leaves the
          // previous attestation intact.
          auto& rt = host_.runtime();
          auto verifier = std::make_unique<enclave::AttestationVerifier>(expected_);
          const auto report = rt.attest(expected_, verifier->challenge());
          verifier->verify_report(report);
          report_ = report;
          verifier_ = std::move(verifier);
          break;
        }
        case Call::kEstablish: {
          auto& rt = host_.runtime();
          rt.establish_session(report_.value_or(enclave::AttestationReport{}), verifier_->key_share());
          key_ = verifier_->derive_session(*report_);
          sealer_.emplace(*key_, enclave::Direction::kToTrusted);
          break;
        }
        case Call::kEcall: {
          auto& rt = host_.runtime();
          enclave::SessionKey key = key_.value_or(enclave::SessionKey{});
          if (!sealer_) sealer_.emplace(key, enclave::Direction::kToTrusted);
          hrv::RrSeries s("p", {{kDefaultEpochMs + 1000, hrv::RrInterval::from_ms(800)},
                                {kDefaultEpochMs + 2000, hrv::RrInterval::from_ms(810)},
                                {kDefaultEpochMs + 3000, hrv::RrInterval::from_ms(790)}});
          const auto reply = rt.ecall(seal_task(*sealer_, make_batch("p", 0, s)));
          if (!key_ || !open_reply(reply, *key_, "p", 0).value_or(hrv::Outcome::failure(ErrorCode::kAlgorithmError)).ok()) {
            return ErrorCode::kAuthenticationFailure;
          }
          break;
        }
      }
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kOk;
  }

  std::optional<enclave::RuntimeState> state() {
    if (!host_.loaded()) return std::nullopt;
    return host_.runtime().state();
  }

 private:
  hrv::AnalysisAlgorithm algorithm_;
  enclave::EnclaveMeasurement expected_;
  std::unique_ptr<enclave::AttestationVerifier> verifier_;
  enclave::EnclaveHost host_;
  std::optional<enclave::AttestationReport> report_;
  std::optional<enclave::SessionKey> key_;
  std::optional<enclave::Sealer> sealer_;
};

// Documented outcome of `call` given the current lifecycle state.
inline ErrorCode expected_outcome(const std::optional<enclave::RuntimeState>& state, Call call) {
  using enclave::RuntimeState;
  if (call == Call::kCreate) return state ? ErrorCode::kEnclaveAlreadyLoaded : ErrorCode::kOk;
  if (!state) return ErrorCode::kNoEnclave;
  switch (call) {
    case Call::kAttest:
      return *state == RuntimeState::kCreated ? ErrorCode::kOk : ErrorCode::kInvalidState;
    case Call::kEstablish:
      return *state == RuntimeState::kAttested ? ErrorCode::kOk : ErrorCode::kInvalidState;
    case Call::kEcall:
      return *state == RuntimeState::kSessioned ? ErrorCode::kOk : ErrorCode::kCallGateRefused;
    default:
      return ErrorCode::kOk;
  }
}

inline std::optional<enclave::RuntimeState> next_state(const std::optional<enclave::RuntimeState>& state, Call call) {
  using enclave::RuntimeState;
  if (expected_outcome(state, call) != ErrorCode::kOk) return state;
  switch (call) {
    case Call::kCreate:
      return RuntimeState::kCreated;
    case Call::kAttest:
      return RuntimeState::kAttested;
    case Call::kEstablish:
      return RuntimeState::kSessioned;
    case Call::kEcall:
      return state;
  }
  return state;
}

struct SequenceCheck {
  bool accepted = true;         // every call succeeded
  bool matches_model = true;    // codes and states as documented
  std::string detail;
};

inline SequenceCheck run_sequence(const std::vector<Call>& seq, hrv::AnalysisAlgorithm algorithm) {
  ProtocolDriver driver(algorithm);
  std::optional<enclave::RuntimeState> model;
  SequenceCheck out;
  for (const auto call : seq) {
    const auto want = expected_outcome(model, call);
    const auto got = driver.step(call);
    model = next_state(model, call);
    if (got != ErrorCode::kOk) out.accepted = false;
    if (got != want || driver.state() != model) {
      out.matches_model = false;
      out.detail += std::string(call_name(call)) + ": got " + std::string(error_name(got)) + ", want " +
                    std::string(error_name(want)) + "; ";
    }
  }
  return out;
}

// All sequences over the four calls with length 0..max_len.
inline std::vector<std::vector<Call>> all_sequences(std::size_t max_len) {
  std::vector<std::vector<Call>> out{{}};
  std::vector<std::vector<Call>> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Call>> next;
    for (const auto& prefix : frontier) {
      for (const auto c : kAllCalls) {
        auto s = prefix;
        s.push_back(c);
        next.push_back(s);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// create, attest, establish_session, ecall...
inline bool is_documented_order(const std::vector<Call>& seq) {
  static constexpr Call order[] = {Call::kCreate, Call::kAttest, Call::kEstablish};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto want = i < 3 ? order[i] : Call::kEcall;
    if (seq[i] != want) return false;
  }
  return true;
}

}  // namespace cardiostream::testing
