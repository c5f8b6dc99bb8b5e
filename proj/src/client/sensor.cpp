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

#include "cardiostream/client/sensor.hpp"

#include <cmath>

namespace cardiostream::client {

void SensorConfig::validate() const {
  if (client_id.empty() || client_id.front() == '.' || client_id.find_first_of("/\\") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "bad client id '" + client_id + "'");
  }
  if (!(jitter_pct >= 0.0 && jitter_pct < 100.0)) {
    throw Error(ErrorCode::kInvalidArgument, "jitter_pct out of [0, 100)");
  }
  if (const auto* p = std::get_if<Physiologic>(&mode)) {
    if (!(p->hr_bpm >= 60.0 && p->hr_bpm <= 180.0)) {
      throw Error(ErrorCode::kInvalidArgument, "hr_bpm out of [60, 180]");
    }
  } else if (!(std::get<RateDriven>(mode).s_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "s_rate must be positive");
  }
}

SensorStream::SensorStream(SensorConfig config) : config_(std::move(config)), rng_(config_.seed) {
  config_.validate();
  schedule();
}

// 53-bit uniform in [0, 1); std::uniform_real_distribution is not portable
// across standard libraries.
double SensorStream::draw_rr_ms(double mean_ms) {
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  const double spread = config_.jitter_pct / 100.0;
  return mean_ms * (1.0 + spread * (2.0 * u - 1.0));
}

void SensorStream::schedule() {
  if (const auto* p = std::get_if<Physiologic>(&config_.mode)) {
    pending_rr_ = hrv::RrInterval::from_ms(draw_rr_ms(60000.0 / p->hr_bpm));
    cumulative_us_ += pending_rr_.micros();
    next_due_ms_ = cumulative_us_ / 1000;
    next_t_ms_ = config_.start_ms + next_due_ms_;
    return;
  }
  const double rate = std::get<RateDriven>(config_.mode).s_rate;
  pending_rr_ = hrv::RrInterval::from_ms(draw_rr_ms(kRateDrivenMeanRrMs));
  const auto i = static_cast<double>(index_);
  next_due_ms_ = static_cast<std::int64_t>(std::floor(i * 1000.0 / rate));
  next_t_ms_ = config_.start_ms + static_cast<std::int64_t>(index_) * kRateDrivenSpacingMs;
}

hrv::RrSample SensorStream::next() {
  hrv::RrSample s{next_t_ms_, pending_rr_};
  ++index_;
  schedule();
  return s;
}

hrv::RrSeries generate_rr(const SensorConfig& config, double duration_s) {
  if (!(duration_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "duration must be positive");
  SensorStream stream(config);
  hrv::RrSeries series(config.client_id);
  if (const auto* r = std::get_if<RateDriven>(&config.mode)) {
    const auto n = static_cast<std::uint64_t>(std::floor(r->s_rate * duration_s));
    series.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) series.push_back(stream.next());
    return series;
  }
  const auto end_ms = static_cast<std::int64_t>(std::llround(duration_s * 1000.0));
  while (stream.next_due_ms() <= end_ms) series.push_back(stream.next());
  return series;
}

}  // namespace cardiostream::client
