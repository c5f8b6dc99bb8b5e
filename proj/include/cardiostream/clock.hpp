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

#include <chrono>
#include <cstdint>
#include <thread>

namespace cardiostream {

// Millisecond wall clock; injectable so window logic can run on virtual time.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_ms() = 0;
  virtual void sleep_until(std::int64_t t_ms) = 0;
  virtual bool is_virtual() const { return false; }
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_ms() override {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
  }
  void sleep_until(std::int64_t t_ms) override {
    const auto delta = t_ms - now_ms();
    if (delta > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delta));
  }
};

// Virtual time: sleeping jumps straight to the target.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(std::int64_t start_ms) : now_(start_ms) {}
  std::int64_t now_ms() override { return now_; }
  void sleep_until(std::int64_t t_ms) override {
    if (t_ms > now_) now_ = t_ms;
  }
  bool is_virtual() const override { return true; }
  void advance(std::int64_t delta_ms) { now_ += delta_ms; }

 private:
  std::int64_t now_;
};

// Monotonic elapsed-time measurement in fractional milliseconds.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// 2019-01-01T00:00:00Z, the default origin of simulated streams.
inline constexpr std::int64_t kDefaultEpochMs = 1546300800000;

}  // namespace cardiostream
