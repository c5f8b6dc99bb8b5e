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

#include "cardiostream/error.hpp"

#include <array>
#include <utility>

namespace cardiostream {
namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 26> kNames{{
    {ErrorCode::kOk, "Ok"},
    {ErrorCode::kMalformedRecord, "MalformedRecord"},
    {ErrorCode::kInsufficientData, "InsufficientData"},
    {ErrorCode::kUndefinedRatio, "UndefinedRatio"},
    {ErrorCode::kMeasurementMismatch, "MeasurementMismatch"},
    {ErrorCode::kInvalidReport, "InvalidReport"},
    {ErrorCode::kStaleNonce, "StaleNonce"},
    {ErrorCode::kInvalidState, "InvalidState"},
    {ErrorCode::kCallGateRefused, "CallGateRefused"},
    {ErrorCode::kEnclaveAlreadyLoaded, "EnclaveAlreadyLoaded"},
    {ErrorCode::kNoEnclave, "NoEnclave"},
    {ErrorCode::kNonceExhausted, "NonceExhausted"},
    {ErrorCode::kAuthenticationFailure, "AuthenticationFailure"},
    {ErrorCode::kUnknownKeyId, "UnknownKeyId"},
    {ErrorCode::kMalformedEnvelope, "MalformedEnvelope"},
    {ErrorCode::kAlgorithmError, "AlgorithmError"},
    {ErrorCode::kChannelClosed, "ChannelClosed"},
    {ErrorCode::kAttestationFailed, "AttestationFailed"},
    {ErrorCode::kSourceUnavailable, "SourceUnavailable"},
    {ErrorCode::kSinkUnavailable, "SinkUnavailable"},
    {ErrorCode::kDepositUnavailable, "DepositUnavailable"},
    {ErrorCode::kFetchUnavailable, "FetchUnavailable"},
    {ErrorCode::kUnknownRun, "UnknownRun"},
    {ErrorCode::kEmptyGroup, "EmptyGroup"},
    {ErrorCode::kMissingBaseline, "MissingBaseline"},
    {ErrorCode::kInvalidArgument, "InvalidArgument"},
}};

}  // namespace

std::string_view error_name(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

ErrorCode error_from_name(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return ErrorCode::kInvalidArgument;
}

}  // namespace cardiostream
