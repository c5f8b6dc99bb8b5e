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

#include <span>
#include <vector>

#include "cardiostream/hrv/types.hpp"

namespace cardiostream::hrv {

struct FrequencyBand {
  double lo_hz;
  double hi_hz;
};

inline constexpr FrequencyBand kLfBand{0.04, 0.15};
inline constexpr FrequencyBand kHfBand{0.15, 0.40};

inline constexpr double kGridLoHz = 0.01;
inline constexpr double kGridHiHz = 0.50;
inline constexpr std::size_t kGridPoints = 512;

struct SpectrumPoint {
  double hz;
  double power;  // ms^2 / Hz
};

std::vector<double> uniform_grid(double lo_hz, double hi_hz, std::size_t points);

// The fixed 512-point grid over [0.01, 0.50] Hz used by hrv_bands.
const std::vector<double>& default_grid();

// Lomb-Scargle periodogram of the mean-subtracted tachogram, abscissa being
// R-peak time in seconds. Power is scaled to a one-sided density (ms^2/Hz)
// so that its integral approximates the RR variance.
//
// Requires >= 8 samples (kInsufficientData) and a non-empty, strictly
// increasing, positive grid (kInvalidArgument).
std::vector<SpectrumPoint> lomb_periodogram(const RrSeries& series, std::span<const double> freqs);

// Trapezoidal integral over grid segments whose midpoint lies in
// [lo, hi) (the HF band also admits hi itself). Segments are assigned whole,
// so adjacent bands partition the integral exactly.
double band_power(std::span<const SpectrumPoint> spectrum, FrequencyBand band);

// LF/HF powers and HF-to-LF ratio on the default grid.
// Requires >= 8 samples spanning >= 30 s (kInsufficientData); throws
// kUndefinedRatio when the LF power is zero.
BandsOut hrv_bands(const RrSeries& series);

}  // namespace cardiostream::hrv
