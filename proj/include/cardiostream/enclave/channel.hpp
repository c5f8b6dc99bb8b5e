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

#include <atomic>
#include <mutex>
#include <vector>

#include "cardiostream/enclave/crypto.hpp"

namespace cardiostream::enclave {

// Observer of every buffer the untrusted host touches.
class ByteTap {
 public:
  virtual ~ByteTap() = default;
  virtual void observe(std::span<const std::uint8_t> buffer) = 0;
};

class RecordingTap final : public ByteTap {
 public:
  void observe(std::span<const std::uint8_t> buffer) override;

  std::vector<Bytes> snapshot() const;
  std::size_t buffer_count() const;
  std::size_t total_bytes() const;

 private:
  mutable std::mutex mu_;
  std::vector<Bytes> buffers_;
  std::size_t total_ = 0;
};

// Host shared memory between the untrusted worker and the trusted component.
// Each transfer copies the buffer through the shared region and reports it
// to the tap.
class HostChannel {
 public:
  explicit HostChannel(ByteTap* tap = nullptr) : tap_(tap) {}

  // Throws Error(kChannelClosed) after close().
  Bytes transfer(std::span<const std::uint8_t> buffer);

  void close() { closed_ = true; }
  bool is_closed() const { return closed_; }
  std::uint64_t bytes_transferred() const { return bytes_; }

 private:
  ByteTap* tap_;
  std::atomic<bool> closed_{false};
  std::atomic<std::uint64_t> bytes_{0};
};

}  // namespace cardiostream::enclave
