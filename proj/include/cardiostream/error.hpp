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

#include <stdexcept>
#include <string>
#include <string_view>

namespace cardiostream {

enum class ErrorCode : unsigned char {
  kOk = 0,
  // hrv
  kMalformedRecord,
  kInsufficientData,
  kUndefinedRatio,
  // enclave
  kMeasurementMismatch,
  kInvalidReport,
  kStaleNonce,
  kInvalidState,
  kCallGateRefused,
  kEnclaveAlreadyLoaded,
  kNoEnclave,
  kNonceExhausted,
  kAuthenticationFailure,
  kUnknownKeyId,
  kMalformedEnvelope,
  kAlgorithmError,
  // engine
  kChannelClosed,
  kAttestationFailed,
  kSourceUnavailable,
  kSinkUnavailable,
  // client
  kDepositUnavailable,
  kFetchUnavailable,
  // metrics / bench
  kUnknownRun,
  kEmptyGroup,
  kMissingBaseline,
  kInvalidArgument,
};

std::string_view error_name(ErrorCode code);

// Inverse of error_name; kInvalidArgument for unknown names.
ErrorCode error_from_name(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cardiostream
