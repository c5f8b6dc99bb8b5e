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

#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "cardiostream/metrics/stats_log.hpp"
#include "cardiostream/metrics/summary.hpp"

namespace httplib {
class Server;
}

namespace cardiostream::metrics {

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

std::string batches_json(const std::vector<engine::BatchStats>& entries);
std::string summary_json(const std::string& run_id, const RunSummary& summary);

// Routes:
//   GET /api/v1/runs/<run_id>/batches  -> full historic, insertion order
//   GET /api/v1/runs/<run_id>/summary  -> RunSummary
// 404 for unknown runs or paths, 409 when the run has no successful batch.
HttpReply handle_get(const RunRegistry& registry, std::string_view path);

// Read-only HTTP endpoint over a registry, served from a background thread.
class MetricsServer {
 public:
  explicit MetricsServer(const RunRegistry& registry);
  ~MetricsServer();

  MetricsServer(const MetricsServer&) = delete;
  MetricsServer& operator=(const MetricsServer&) = delete;

  // Port 0 picks an ephemeral port. Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void stop();

 private:
  const RunRegistry& registry_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace cardiostream::metrics
