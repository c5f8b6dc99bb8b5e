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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cardiostream/clock.hpp"
#include "cardiostream/hrv/types.hpp"

namespace cardiostream::testing {

namespace fs = std::filesystem;

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = fs::temp_directory_path() / ("cstest-" + std::to_string(rng()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path sub(const std::string& name) const {
    fs::create_directories(path_ / name);
    return path_ / name;
  }

 private:
  fs::path path_;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << body;
}

// Two-pass population standard deviation in extended precision.
inline long double oracle_sdnn(const std::vector<double>& rr) {
  long double sum = 0;
  for (double v : rr) sum += v;
  const long double mean = sum / static_cast<long double>(rr.size());
  long double sq = 0;
  for (double v : rr) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / static_cast<long double>(rr.size()));
}

// Classical Lomb-Scargle with the explicit time shift tau, scaled to the
// same one-sided density (2 * P * mean spacing).
inline std::vector<long double> oracle_lomb(const hrv::RrSeries& series, const std::vector<double>& freqs) {
  const auto s = series.samples();
  const std::size_t n = s.size();
  std::vector<long double> t(n), y(n);
  long double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += s[i].rr.ms();
  mean /= static_cast<long double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = static_cast<long double>(s[i].t_ms - s[0].t_ms) / 1000.0L;
    y[i] = s[i].rr.ms() - mean;
  }
  const long double dt = (t[n - 1] - t[0]) / static_cast<long double>(n - 1);
  std::vector<long double> out;
  for (double f : freqs) {
    const long double w = 2.0L * std::numbers::pi_v<long double> * f;
    long double s2 = 0, c2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s2 += std::sin(2 * w * t[i]);
      c2 += std::cos(2 * w * t[i]);
    }
    const long double tau = std::atan2(s2, c2) / (2 * w);
    long double yc = 0, ys = 0, cc = 0, ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long double c = std::cos(w * (t[i] - tau));
      const long double sn = std::sin(w * (t[i] - tau));
      yc += y[i] * c;
      ys += y[i] * sn;
      cc += c * c;
      ss += sn * sn;
    }
    long double p = 0;
    if (cc > 0) p += yc * yc / cc;
    if (ss > 0) p += ys * ys / ss;
    out.push_back(2.0L * 0.5L * p * dt);
  }
  return out;
}

// Tachogram whose RR values follow rr(t) = mean + depth * sin(2 pi f t),
// t being the running beat time.
inline hrv::RrSeries tone_series(double f_hz, double depth_ms, std::size_t n, double mean_ms = 800.0,
                                 std::int64_t start_ms = kDefaultEpochMs) {
  hrv::RrSeries series("tone");
  double t_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rr = mean_ms + depth_ms * std::sin(2.0 * std::numbers::pi * f_hz * t_s);
    t_s += rr / 1000.0;
    series.push_back({start_ms + static_cast<std::int64_t>(std::llround(t_s * 1000.0)), hrv::RrInterval::from_ms(rr)});
  }
  return series;
}

// Random physiologic series with strictly increasing timestamps.
inline hrv::RrSeries random_series(std::mt19937_64& rng, std::size_t n, const std::string& client = "c") {
  std::uniform_int_distribution<std::int64_t> rr_us(300000, 1500000);
  hrv::RrSeries series(client);
  series.reserve(n);
  std::int64_t t = kDefaultEpochMs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto rr = hrv::RrInterval::from_micros(rr_us(rng));
    t += std::max<std::int64_t>(1, rr.micros() / 1000);
    series.push_back({t, rr});
  }
  return series;
}

}  // namespace cardiostream::testing
