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

#include "cardiostream/hrv/analytics.hpp"

#include <cmath>

#include "cardiostream/hrv/spectrum.hpp"

namespace cardiostream::hrv {

double sdnn(std::span<const double> rr_ms) {
  if (rr_ms.size() < 2) {
    throw Error(ErrorCode::kInsufficientData, "sdnn needs at least 2 samples");
  }
  // Welford; a constant series keeps m2 at exactly zero.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double x : rr_ms) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  return std::sqrt(m2 / static_cast<double>(n));
}

double sdnn(const RrSeries& series) {
  const auto rr = series.rr_ms();
  return sdnn(rr);
}

IdentityOut identity(const RrSeries& series) {
  return IdentityOut{{series.samples().begin(), series.samples().end()}};
}

HrvResult run_algorithm(Algorithm algorithm, const RrSeries& series) {
  switch (algorithm) {
    case Algorithm::kIdentity:
      return identity(series);
    case Algorithm::kSdnn:
      return SdnnOut{sdnn(series)};
    case Algorithm::kHrvBands:
      return hrv_bands(series);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

Outcome run_algorithm_checked(Algorithm algorithm, const RrSeries& series) {
  try {
    return Outcome::success(run_algorithm(algorithm, series));
  } catch (const Error& e) {
    return Outcome::failure(e.code());
  }
}

}  // namespace cardiostream::hrv
