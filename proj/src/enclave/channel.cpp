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

#include "cardiostream/enclave/channel.hpp"

#include "cardiostream/error.hpp"

namespace cardiostream::enclave {

void RecordingTap::observe(std::span<const std::uint8_t> buffer) {
  std::lock_guard lock(mu_);
  buffers_.emplace_back(buffer.begin(), buffer.end());
  total_ += buffer.size();
}

std::vector<Bytes> RecordingTap::snapshot() const {
  std::lock_guard lock(mu_);
  return buffers_;
}

std::size_t RecordingTap::buffer_count() const {
  std::lock_guard lock(mu_);
  return buffers_.size();
}

std::size_t RecordingTap::total_bytes() const {
  std::lock_guard lock(mu_);
  return total_;
}

Bytes HostChannel::transfer(std::span<const std::uint8_t> buffer) {
  if (closed_) throw Error(ErrorCode::kChannelClosed, "host channel closed");
  Bytes shared(buffer.begin(), buffer.end());
  if (tap_ != nullptr) tap_->observe(shared);
  bytes_ += shared.size();
  return shared;
}

}  // namespace cardiostream::enclave
