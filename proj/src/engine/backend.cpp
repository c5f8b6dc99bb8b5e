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

#include "cardiostream/engine/backend.hpp"

#include <sodium.h>

#include "cardiostream/clock.hpp"
#include "cardiostream/enclave/payload.hpp"
#include "cardiostream/enclave/runtime.hpp"
#include "cardiostream/hrv/analytics.hpp"

namespace cardiostream::engine {
namespace {

class BaselineBackend final : public ExecutionBackend {
 public:
  explicit BaselineBackend(hrv::AnalysisAlgorithm algorithm) : algorithm_(algorithm) {}
  ExecutionMode mode() const override { return ExecutionMode::kBaseline; }
  hrv::Outcome run(const MicroBatch& batch) override {
    return hrv::run_algorithm_checked(algorithm_.kind, batch.samples);
  }

 private:
  hrv::AnalysisAlgorithm algorithm_;
};

class SplitPlainBackend final : public ExecutionBackend {
 public:
  SplitPlainBackend(hrv::AnalysisAlgorithm algorithm, enclave::ByteTap* tap)
      : worker_(algorithm), channel_(tap) {}
  ExecutionMode mode() const override { return ExecutionMode::kSplitPlain; }

  hrv::Outcome run(const MicroBatch& batch) override {
    std::lock_guard lock(mu_);
    const auto task = channel_.transfer(enclave::encode_task(batch));
    const auto reply = channel_.transfer(worker_.call(task));
    return enclave::decode_reply(reply);
  }
  void close_channel() override { channel_.close(); }

 private:
  std::mutex mu_;
  enclave::PlainWorker worker_;
  enclave::HostChannel channel_;
};

// The trusted driver holds the session key and the plaintext; the untrusted
// host only moves envelopes between the channel and the call gate.
class SplitEncryptedBackend final : public ExecutionBackend {
 public:
  SplitEncryptedBackend(hrv::AnalysisAlgorithm algorithm, const BackendOptions& options)
      : channel_(options.tap) {
    auto& runtime = host_.create(algorithm, options.loaded_build_tag);
    try {
      key_ = enclave::attest_and_establish(
          runtime, enclave::measure_code(algorithm, options.expected_build_tag));
    } catch (const Error& e) {
      throw Error(ErrorCode::kAttestationFailed, e.what());
    }
    sealer_.emplace(*key_, enclave::Direction::kToTrusted);
  }
  ~SplitEncryptedBackend() override {
    if (key_) sodium_memzero(key_->secret.data(), key_->secret.size());
  }

  ExecutionMode mode() const override { return ExecutionMode::kSplitEncrypted; }

  hrv::Outcome run(const MicroBatch& batch) override {
    std::lock_guard lock(mu_);
    const enclave::ChannelAad task_aad{batch.client_id, batch.window_id, enclave::Direction::kToTrusted};
    const enclave::ChannelAad reply_aad{batch.client_id, batch.window_id,
                                        enclave::Direction::kFromTrusted};
    auto payload = enclave::encode_task(batch);
    const auto task = sealer_->seal(payload, task_aad.encode());
    sodium_memzero(payload.data(), payload.size());

    // Untrusted side: shared memory in, call gate, shared memory out.
    const auto shm_in = channel_.transfer(task.encode());
    const auto reply_env = host_.runtime().ecall(shm_in);
    const auto shm_out = channel_.transfer(reply_env.encode());

    try {
      const auto env = enclave::CipherEnvelope::decode(shm_out);
      auto plaintext = enclave::open(env, *key_, reply_aad.encode());
      auto outcome = enclave::decode_reply(plaintext);
      sodium_memzero(plaintext.data(), plaintext.size());
      return outcome;
    } catch (const Error&) {
      return hrv::Outcome::failure(ErrorCode::kAuthenticationFailure);
    }
  }
  void close_channel() override { channel_.close(); }

 private:
  std::mutex mu_;
  enclave::EnclaveHost host_;
  enclave::HostChannel channel_;
  std::optional<enclave::SessionKey> key_;
  std::optional<enclave::Sealer> sealer_;
};

}  // namespace

std::unique_ptr<ExecutionBackend> make_backend(ExecutionMode mode, hrv::AnalysisAlgorithm algorithm,
                                               const BackendOptions& options) {
  switch (mode) {
    case ExecutionMode::kBaseline:
      return std::make_unique<BaselineBackend>(algorithm);
    case ExecutionMode::kSplitPlain:
      return std::make_unique<SplitPlainBackend>(algorithm, options.tap);
    case ExecutionMode::kSplitEncrypted:
      return std::make_unique<SplitEncryptedBackend>(algorithm, options);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown execution mode");
}

BatchExecution execute_batch(const JobSpec& job, const MicroBatch& batch, ExecutionBackend& backend) {
  BatchStats stats;
  stats.client_id = batch.client_id;
  stats.window_id = batch.window_id;
  stats.record_count = batch.record_count();
  stats.mode = backend.mode();
  stats.algorithm = job.algorithm.kind;

  Stopwatch watch;
  auto outcome = hrv::Outcome::failure(ErrorCode::kAlgorithmError);
  try {
    outcome = backend.run(batch);
  } catch (const Error& e) {
    outcome = hrv::Outcome::failure(e.code());
  }
  stats.processing_time_ms = watch.elapsed_ms();
  stats.status = outcome.error();
  return {std::move(outcome), std::move(stats)};
}

}  // namespace cardiostream::engine
