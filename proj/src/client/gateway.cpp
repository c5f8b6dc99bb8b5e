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

#include "cardiostream/client/gateway.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "cardiostream/hrv/record.hpp"

namespace cardiostream::client {

void GatewayConfig::validate() const {
  if (!(batch_period_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "batch_period_s must be > 0");
  if (!(fetch_period_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "fetch_period_s must be > 0");
  if (!(phase_s >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "phase_s must be >= 0");
}

namespace {

void deposit_once(const fs::path& part, const fs::path& target, const std::string& body,
                  const FlushOptions& options) {
  {
    std::ofstream out(part, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + part.string());
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + part.string());
  }
  if (options.before_rename) options.before_rename(part);
  fs::rename(part, target);
}

}  // namespace

fs::path gateway_flush(const std::string& client_id, std::span<const hrv::RrSample> samples,
                       const GatewayConfig& config, std::uint64_t seq, const FlushOptions& options) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to flush");
  const auto body = hrv::serialize_rr_records(samples);
  const auto target = config.deposit_dir / (client_id + "_" + std::to_string(seq) + ".csv");
  const auto part = fs::path(target.string() + ".part");

  auto backoff = config.retry_backoff;
  for (unsigned attempt = 0;; ++attempt) {
    try {
      deposit_once(part, target, body, options);
      return target;
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      std::error_code ec;
      fs::remove(part, ec);
      if (attempt >= config.max_retries) {
        throw Error(ErrorCode::kDepositUnavailable, target.string() + ": " + e.what());
      }
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

std::vector<FetchedResult> fetch_results(const std::string& client_id, const GatewayConfig& config,
                                         std::set<std::string>& seen) {
  std::vector<FetchedResult> out;
  std::error_code ec;
  fs::directory_iterator it(config.fetch_dir, ec);
  if (ec) throw Error(ErrorCode::kFetchUnavailable, config.fetch_dir.string() + ": " + ec.message());

  const std::string prefix = client_id + "_";
  for (const auto& entry : it) {
    const auto name = entry.path().filename().string();
    if (!name.starts_with(prefix) || !name.ends_with(".out") || seen.contains(name)) continue;
    const auto digits = name.substr(prefix.size(), name.size() - prefix.size() - 4);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      continue;
    }
    if (!entry.is_regular_file(ec)) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    if (!in) continue;  // renamed away between listing and open
    std::ostringstream body;
    body << in.rdbuf();
    out.push_back({name, std::stoull(digits), body.str()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.window_id < b.window_id; });
  for (const auto& r : out) seen.insert(r.file);
  return out;
}

}  // namespace cardiostream::client
