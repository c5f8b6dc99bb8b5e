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

#include "cardiostream/engine/sink.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "cardiostream/hrv/result_text.hpp"

namespace cardiostream::engine {
namespace {

void write_all(int fd, std::string_view body) {
  std::size_t off = 0;
  while (off < body.size()) {
    const auto n = ::write(fd, body.data() + off, body.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error(std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

void fsync_dir(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

}  // namespace

std::string result_file_name(const std::string& client_id, std::uint64_t window_id) {
  return client_id + "_" + std::to_string(window_id) + ".out";
}

void write_file_atomically(const fs::path& target, std::string_view body, const SinkOptions& options,
                           ErrorCode failure_code) {
  const auto dir = target.parent_path();
  const auto tmp = dir / ("." + target.filename().string() + ".tmp");
  try {
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw std::runtime_error(std::string("open: ") + std::strerror(errno));
    try {
      write_all(fd, body);
      if (options.durable && ::fsync(fd) != 0) throw std::runtime_error("fsync failed");
    } catch (...) {
      ::close(fd);
      throw;
    }
    ::close(fd);
    if (options.before_rename) options.before_rename(tmp);
    fs::rename(tmp, target);
    if (options.durable) fsync_dir(dir);
  } catch (const std::exception& e) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw Error(failure_code, "writing " + target.string() + ": " + e.what());
  }
}

fs::path write_result(const fs::path& result_dir, const std::string& client_id, std::uint64_t window_id,
                      const hrv::Outcome& outcome, const SinkOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(result_dir, ec)) {
    throw Error(ErrorCode::kSinkUnavailable, "result dir " + result_dir.string() + " missing");
  }
  const auto target = result_dir / result_file_name(client_id, window_id);
  write_file_atomically(target, hrv::format_outcome_text(outcome), options, ErrorCode::kSinkUnavailable);
  return target;
}

}  // namespace cardiostream::engine
