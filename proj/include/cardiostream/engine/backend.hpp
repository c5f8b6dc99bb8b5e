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
#include <mutex>
#include <string>

#include "cardiostream/enclave/channel.hpp"
#include "cardiostream/enclave/measurement.hpp"
#include "cardiostream/engine/config.hpp"
#include "cardiostream/engine/micro_batch.hpp"

namespace cardiostream::engine {

struct BackendOptions {
  // Observes every buffer the untrusted host touches in split modes.
  enclave::ByteTap* tap = nullptr;
  // Build tag loaded into the runtime vs. the one the driver expects.
  std::string loaded_build_tag{enclave::kEngineBuildTag};
  std::string expected_build_tag{enclave::kEngineBuildTag};
};

// Executes micro-batches in one execution mode. Calls are serialized
// internally; use several backends for parallel execution.
class ExecutionBackend {
 public:
  virtual ~ExecutionBackend() = default;
  virtual ExecutionMode mode() const = 0;
  // Algorithm failures come back as a failed Outcome. Channel failures throw
  // Error(kChannelClosed).
  virtual hrv::Outcome run(const MicroBatch& batch) = 0;
  // Closes the inter-component channel (no-op for Baseline).
  virtual void close_channel() {}
};

// For kSplitEncrypted this creates the runtime and completes attestation and
// session establishment; failures throw Error(kAttestationFailed).
std::unique_ptr<ExecutionBackend> make_backend(ExecutionMode mode, hrv::AnalysisAlgorithm algorithm,
                                               const BackendOptions& options = {});

struct BatchExecution {
  hrv::Outcome outcome;
  BatchStats stats;
};

// Runs one batch through the backend, timing the full path. Never throws for
// per-batch failures: they are recorded in stats.status.
BatchExecution execute_batch(const JobSpec& job, const MicroBatch& batch, ExecutionBackend& backend);

}  // namespace cardiostream::engine
