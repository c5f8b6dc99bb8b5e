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

#include "cardiostream/hrv/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cardiostream::hrv {

RrInterval RrInterval::from_ms(double ms) {
  return RrInterval(static_cast<std::int64_t>(std::llround(ms * 1000.0)));
}

RrSeries::RrSeries(std::string client_id, std::vector<RrSample> samples)
    : client_id_(std::move(client_id)), samples_(std::move(samples)) {
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (samples_[i].t_ms <= samples_[i - 1].t_ms) {
      throw Error(ErrorCode::kInvalidArgument,
                  "timestamps not strictly increasing at sample " + std::to_string(i));
    }
  }
}

void RrSeries::push_back(const RrSample& sample) {
  if (!samples_.empty() && sample.t_ms <= samples_.back().t_ms) {
    throw Error(ErrorCode::kInvalidArgument, "timestamps not strictly increasing");
  }
  samples_.push_back(sample);
}

std::vector<double> RrSeries::rr_ms() const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.rr.ms());
  return out;
}

double RrSeries::span_s() const {
  if (samples_.size() < 2) return 0.0;
  return static_cast<double>(samples_.back().t_ms - samples_.front().t_ms) / 1000.0;
}

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kIdentity:
      return "identity";
    case Algorithm::kSdnn:
      return "sdnn";
    case Algorithm::kHrvBands:
      return "hrvbands";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_name(a) == lower) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

}  // namespace cardiostream::hrv
