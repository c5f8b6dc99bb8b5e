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

#include "cardiostream/hrv/spectrum.hpp"

#include <cmath>
#include <numbers>

namespace cardiostream::hrv {
namespace {

constexpr std::size_t kMinSpectralSamples = 8;
constexpr double kMinBandsSpanS = 30.0;

void check_grid(std::span<const double> freqs) {
  if (freqs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty frequency grid");
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    if (!(freqs[k] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid frequencies must be > 0");
    if (k > 0 && !(freqs[k] > freqs[k - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "grid must be strictly increasing");
    }
  }
}

bool is_uniform(std::span<const double> freqs) {
  if (freqs.size() < 3) return true;
  const double step = (freqs.back() - freqs.front()) / static_cast<double>(freqs.size() - 1);
  for (std::size_t k = 1; k < freqs.size(); ++k) {
    if (std::abs(freqs[k] - freqs[k - 1] - step) > 1e-9 * step) return false;
  }
  return true;
}

// Least-squares sinusoid fit power, 0.5 * b^T M^-1 b with b = (YC, YS) and
// M the 2x2 normal matrix. Equivalent to the time-shifted Lomb form without
// needing the shift itself.
double fit_power(double yc, double ys, double cc, double ss, double cs) {
  const double det = cc * ss - cs * cs;
  const double scale = cc + ss;
  if (det > 1e-12 * scale * scale) {
    return 0.5 * (ss * yc * yc - 2.0 * cs * yc * ys + cc * ys * ys) / det;
  }
  double p = 0.0;
  if (cc > 0.0) p += yc * yc / cc;
  if (ss > 0.0) p += ys * ys / ss;
  return 0.5 * p;
}

}  // namespace

std::vector<double> uniform_grid(double lo_hz, double hi_hz, std::size_t points) {
  if (points < 2 || !(hi_hz > lo_hz)) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs >= 2 points and hi > lo");
  }
  std::vector<double> grid(points);
  const double step = (hi_hz - lo_hz) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) grid[k] = lo_hz + step * static_cast<double>(k);
  grid.back() = hi_hz;
  return grid;
}

const std::vector<double>& default_grid() {
  static const std::vector<double> grid = uniform_grid(kGridLoHz, kGridHiHz, kGridPoints);
  return grid;
}

std::vector<SpectrumPoint> lomb_periodogram(const RrSeries& series, std::span<const double> freqs) {
  const std::size_t n = series.size();
  if (n < kMinSpectralSamples) {
    throw Error(ErrorCode::kInsufficientData, "periodogram needs at least 8 samples");
  }
  check_grid(freqs);

  const auto samples = series.samples();
  const auto t0 = samples.front().t_ms;

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean += (samples[i].rr.ms() - mean) / static_cast<double>(i + 1);
  }

  const std::size_t nf = freqs.size();
  std::vector<double> yc(nf, 0.0), ys(nf, 0.0), cc(nf, 0.0), ss(nf, 0.0), cs(nf, 0.0);
  const bool uniform = is_uniform(freqs);
  const double df = nf > 1 ? (freqs.back() - freqs.front()) / static_cast<double>(nf - 1) : 0.0;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(samples[i].t_ms - t0) / 1000.0;
    const double y = samples[i].rr.ms() - mean;
    if (uniform) {
      // Rotate (cos, sin) from one grid frequency to the next.
      double c = std::cos(kTwoPi * freqs.front() * t);
      double s = std::sin(kTwoPi * freqs.front() * t);
      const double rc = std::cos(kTwoPi * df * t);
      const double rs = std::sin(kTwoPi * df * t);
      for (std::size_t k = 0; k < nf; ++k) {
        yc[k] += y * c;
        ys[k] += y * s;
        cc[k] += c * c;
        ss[k] += s * s;
        cs[k] += c * s;
        const double next_c = c * rc - s * rs;
        s = s * rc + c * rs;
        c = next_c;
      }
    } else {
      for (std::size_t k = 0; k < nf; ++k) {
        const double c = std::cos(kTwoPi * freqs[k] * t);
        const double s = std::sin(kTwoPi * freqs[k] * t);
        yc[k] += y * c;
        ys[k] += y * s;
        cc[k] += c * c;
        ss[k] += s * s;
        cs[k] += c * s;
      }
    }
  }

  // Mean sample spacing; 2 * P * dt turns the fit power into a one-sided
  // density whose integral is the variance of the tachogram.
  const double dt = series.span_s() / static_cast<double>(n - 1);
  std::vector<SpectrumPoint> out(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    const double p = fit_power(yc[k], ys[k], cc[k], ss[k], cs[k]);
    out[k] = {freqs[k], std::max(0.0, 2.0 * p * dt)};
  }
  return out;
}

double band_power(std::span<const SpectrumPoint> spectrum, FrequencyBand band) {
  double total = 0.0;
  for (std::size_t k = 1; k < spectrum.size(); ++k) {
    const double mid = 0.5 * (spectrum[k - 1].hz + spectrum[k].hz);
    const bool inside =
        mid >= band.lo_hz && (mid < band.hi_hz || (band.hi_hz == kHfBand.hi_hz && mid == band.hi_hz));
    if (!inside) continue;
    total += 0.5 * (spectrum[k - 1].power + spectrum[k].power) * (spectrum[k].hz - spectrum[k - 1].hz);
  }
  return total;
}

BandsOut hrv_bands(const RrSeries& series) {
  if (series.size() < kMinSpectralSamples || series.span_s() < kMinBandsSpanS) {
    throw Error(ErrorCode::kInsufficientData, "hrv bands need >= 8 samples spanning >= 30 s");
  }
  const auto spectrum = lomb_periodogram(series, default_grid());
  BandsOut out;
  out.lf_power = band_power(spectrum, kLfBand);
  out.hf_power = band_power(spectrum, kHfBand);
  if (out.lf_power <= 0.0) throw Error(ErrorCode::kUndefinedRatio, "LF power is zero");
  out.hf_lf_ratio = out.hf_power / out.lf_power;
  return out;
}

}  // namespace cardiostream::hrv
