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

#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include "cardiostream/clock.hpp"
#include "cardiostream/hrv/types.hpp"

namespace cardiostream::client {

// Beats at a fixed mean heart rate, timestamps are cumulative RR.
struct Physiologic {
  double hr_bpm = 72.0;  // [60, 180]
};

// Synthetic benchmark load: s_rate samples emitted per second. Timestamps
// are evenly spaced at kRateDrivenSpacingMs regardless of the rate, so any
// slice of the stream is a plausible tachogram.
struct RateDriven {
  double s_rate = 44.0;
};

using SensorMode = std::variant<Physiologic, RateDriven>;

struct SensorConfig {
  std::string client_id;
  SensorMode mode = Physiologic{};
  std::uint64_t seed = 1;
  double jitter_pct = 5.0;  // uniform RR spread, percent of the mean
  std::int64_t start_ms = kDefaultEpochMs;

  // Throws Error(kInvalidArgument).
  void validate() const;
};

// Mean RR and timestamp step of RateDriven streams.
inline constexpr double kRateDrivenMeanRrMs = 800.0;
inline constexpr std::int64_t kRateDrivenSpacingMs = 800;

// Deterministic sample generator. Each sample has a due time (ms since the
// stream start) at which the sensor emits it.
class SensorStream {
 public:
  explicit SensorStream(SensorConfig config);

  std::int64_t next_due_ms() const { return next_due_ms_; }
  hrv::RrSample next();
  std::uint64_t emitted() const { return index_; }
  const SensorConfig& config() const { return config_; }

 private:
  double draw_rr_ms(double mean_ms);
  void schedule();

  SensorConfig config_;
  std::mt19937_64 rng_;
  std::uint64_t index_ = 0;
  std::int64_t cumulative_us_ = 0;  // Physiologic beat clock
  hrv::RrInterval pending_rr_;
  std::int64_t next_t_ms_ = 0;
  std::int64_t next_due_ms_ = 0;
};

// All samples due within [0, duration_s]. RateDriven yields exactly
// floor(s_rate * duration_s) samples.
hrv::RrSeries generate_rr(const SensorConfig& config, double duration_s);

}  // namespace cardiostream::client
