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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cardiostream/error.hpp"

namespace cardiostream::hrv {

// RR interval stored as an integer count of thousandths of a millisecond,
// i.e. exactly the "dddd.ddd" fixed point carried by the wire record.
class RrInterval {
 public:
  constexpr RrInterval() = default;

  static constexpr RrInterval from_micros(std::int64_t micros) { return RrInterval(micros); }
  // Rounds to the nearest representable thousandth.
  static RrInterval from_ms(double ms);

  constexpr std::int64_t micros() const { return micros_; }
  constexpr double ms() const { return static_cast<double>(micros_) / 1000.0; }

  constexpr auto operator<=>(const RrInterval&) const = default;

 private:
  constexpr explicit RrInterval(std::int64_t micros) : micros_(micros) {}
  std::int64_t micros_ = 0;
};

// One R peak: timestamp (epoch ms) and the interval since the previous peak.
// The client id lives on the owning RrSeries, not on every sample.
struct RrSample {
  std::int64_t t_ms = 0;
  RrInterval rr;

  constexpr bool operator==(const RrSample&) const = default;
};

// Physiologic range accepted by the record parser.
struct RecordGuard {
  double min_rr_ms = 200.0;
  double max_rr_ms = 4000.0;
};

// Ordered per-client series. Timestamps are strictly increasing.
class RrSeries {
 public:
  RrSeries() = default;
  explicit RrSeries(std::string client_id) : client_id_(std::move(client_id)) {}
  // Throws Error(kInvalidArgument) when timestamps are not strictly increasing.
  RrSeries(std::string client_id, std::vector<RrSample> samples);

  void push_back(const RrSample& sample);
  void reserve(std::size_t n) { samples_.reserve(n); }

  const std::string& client_id() const { return client_id_; }
  std::span<const RrSample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  std::vector<double> rr_ms() const;
  // Seconds between the first and the last R peak.
  double span_s() const;

  bool operator==(const RrSeries&) const = default;

 private:
  std::string client_id_;
  std::vector<RrSample> samples_;
};

enum class Algorithm : std::uint8_t { kIdentity = 1, kSdnn = 2, kHrvBands = 3 };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::kIdentity, Algorithm::kSdnn,
                                               Algorithm::kHrvBands};

// (kind, version) is what enclave code measurement hashes.
struct AnalysisAlgorithm {
  Algorithm kind = Algorithm::kIdentity;
  std::uint16_t version = 1;

  bool operator==(const AnalysisAlgorithm&) const = default;
};

std::string_view algorithm_name(Algorithm algorithm);
// Accepts "identity", "sdnn", "hrvbands" (case-insensitive).
Algorithm parse_algorithm(std::string_view name);

struct IdentityOut {
  std::vector<RrSample> samples;
  bool operator==(const IdentityOut&) const = default;
};

struct SdnnOut {
  double sdnn_ms = 0.0;
  bool operator==(const SdnnOut&) const = default;
};

struct BandsOut {
  double lf_power = 0.0;  // ms^2
  double hf_power = 0.0;  // ms^2
  double hf_lf_ratio = 0.0;
  bool operator==(const BandsOut&) const = default;
};

using HrvResult = std::variant<IdentityOut, SdnnOut, BandsOut>;

// Either a result or the error code that prevented it.
class Outcome {
 public:
  static Outcome success(HrvResult result) { return Outcome(std::move(result), ErrorCode::kOk); }
  static Outcome failure(ErrorCode code) { return Outcome(std::nullopt, code); }

  bool ok() const { return error_ == ErrorCode::kOk; }
  ErrorCode error() const { return error_; }
  const HrvResult& value() const { return *result_; }

  bool operator==(const Outcome&) const = default;

 private:
  Outcome(std::optional<HrvResult> result, ErrorCode error)
      : result_(std::move(result)), error_(error) {}

  std::optional<HrvResult> result_;
  ErrorCode error_;
};

}  // namespace cardiostream::hrv
