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

#include "cardiostream/metrics/server.hpp"

#include <httplib.h>
#include <json.hpp>

namespace cardiostream::metrics {
namespace {

using nlohmann::json;

constexpr std::string_view kPrefix = "/api/v1/runs/";

HttpReply error_reply(int status, ErrorCode code, const std::string& what) {
  return {status, json{{"error", std::string(error_name(code))}, {"message", what}}.dump()};
}

}  // namespace

std::string batches_json(const std::vector<engine::BatchStats>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    out.push_back({{"client_id", e.client_id},
                   {"window_id", e.window_id},
                   {"record_count", e.record_count},
                   {"processing_time_ms", e.processing_time_ms},
                   {"mode", std::string(engine::mode_name(e.mode))},
                   {"algorithm", std::string(hrv::algorithm_name(e.algorithm))},
                   {"status", std::string(error_name(e.status))}});
  }
  return out.dump();
}

std::string summary_json(const std::string& run_id, const RunSummary& s) {
  return json{{"run_id", run_id},
              {"mode", std::string(engine::mode_name(s.mode))},
              {"algorithm", std::string(hrv::algorithm_name(s.algorithm))},
              {"load_label", s.load_label},
              {"mean_ms", s.mean_ms},
              {"stddev_ms", s.stddev_ms},
              {"n_runs", s.n_runs}}
      .dump();
}

HttpReply handle_get(const RunRegistry& registry, std::string_view path) {
  if (!path.starts_with(kPrefix)) return error_reply(404, ErrorCode::kInvalidArgument, "no such path");
  const auto rest = path.substr(kPrefix.size());
  const auto slash = rest.find('/');
  if (slash == std::string_view::npos || slash == 0) {
    return error_reply(404, ErrorCode::kInvalidArgument, "no such path");
  }
  const std::string run_id(rest.substr(0, slash));
  const auto leaf = rest.substr(slash + 1);
  try {
    if (leaf == "batches") return {200, batches_json(registry.find(run_id)->snapshot())};
    if (leaf == "summary") {
      const auto log = registry.find(run_id);
      return {200, summary_json(run_id, summarize_run(*log, registry.info(run_id)))};
    }
    return error_reply(404, ErrorCode::kInvalidArgument, "no such path");
  } catch (const Error& e) {
    return error_reply(e.code() == ErrorCode::kUnknownRun ? 404 : 409, e.code(), e.what());
  }
}

MetricsServer::MetricsServer(const RunRegistry& registry) : registry_(registry) {}

MetricsServer::~MetricsServer() { stop(); }

int MetricsServer::start(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  server_->Get(R"(/api/v1/runs/.*)", [this](const httplib::Request& req, httplib::Response& res) {
    const auto reply = handle_get(registry_, req.path);
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  });
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::kInvalidArgument, "cannot bind metrics endpoint to " + host);
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void MetricsServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
  server_.reset();
}

}  // namespace cardiostream::metrics
