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

#include "cardiostream/engine/source.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "cardiostream/hrv/record.hpp"

namespace cardiostream::engine {
namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSourceUnavailable, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void quarantine(const StreamSourceConfig& config, const std::string& file, const std::string& reason,
                std::vector<Quarantined>& out) {
  std::error_code ec;
  const auto dir = config.ingest_dir / kQuarantineDir;
  fs::create_directories(dir, ec);
  fs::rename(config.ingest_dir / file, dir / file, ec);
  std::clog << "[stream-engine] quarantined " << file << ": " << reason << '\n';
  out.push_back({file, reason});
}

}  // namespace

std::vector<std::string> scan_source(const StreamSourceConfig& config,
                                     const std::set<std::string>& seen) {
  std::error_code ec;
  if (!fs::is_directory(config.ingest_dir, ec)) {
    throw Error(ErrorCode::kSourceUnavailable, "ingest dir " + config.ingest_dir.string() + " missing");
  }
  std::vector<std::string> out;
  for (fs::directory_iterator it(config.ingest_dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (!it->is_regular_file(ec)) continue;
    auto name = it->path().filename().string();
    if (name.ends_with(config.client_pattern.in_progress_suffix)) continue;
    if (!config.client_pattern.client_of(name)) continue;
    if (seen.contains(name)) continue;
    out.push_back(std::move(name));
  }
  if (ec) throw Error(ErrorCode::kSourceUnavailable, "scan failed: " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> SourceScanner::poll() {
  auto fresh = scan_source(config_, seen_);
  seen_.insert(fresh.begin(), fresh.end());
  return fresh;
}

FormedBatches form_batches(const StreamSourceConfig& config, const std::vector<std::string>& new_files,
                           std::uint64_t window_id, std::int64_t window_start_ms,
                           const hrv::RecordGuard& guard) {
  const auto& pattern = config.client_pattern;
  std::map<std::string, std::vector<std::string>> by_client;
  for (const auto& f : new_files) {
    if (auto client = pattern.client_of(f)) by_client[*client].push_back(f);
  }

  FormedBatches out;
  for (auto& [client, files] : by_client) {
    std::sort(files.begin(), files.end(), [&](const std::string& a, const std::string& b) {
      return pattern.seq_of(a) < pattern.seq_of(b);
    });

    MicroBatch batch;
    batch.client_id = client;
    batch.window_id = window_id;
    batch.window_start_ms = window_start_ms;
    std::vector<hrv::RrSample> merged;
    std::unordered_set<std::int64_t> taken;

    for (const auto& file : files) {
      std::vector<hrv::RrSample> samples;
      try {
        samples = hrv::parse_rr_records(read_file(config.ingest_dir / file), guard);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kSourceUnavailable) throw;
        quarantine(config, file, e.what(), out.quarantined);
        continue;
      }
      bool ok = true;
      for (std::size_t i = 0; i < samples.size() && ok; ++i) {
        if (i > 0 && samples[i].t_ms <= samples[i - 1].t_ms) ok = false;
        if (taken.contains(samples[i].t_ms)) ok = false;
      }
      if (!ok) {
        quarantine(config, file, "timestamps not strictly increasing", out.quarantined);
        continue;
      }
      for (const auto& s : samples) taken.insert(s.t_ms);
      merged.insert(merged.end(), samples.begin(), samples.end());
      batch.files.push_back(file);
    }
    if (merged.empty()) continue;
    std::sort(merged.begin(), merged.end(),
              [](const hrv::RrSample& a, const hrv::RrSample& b) { return a.t_ms < b.t_ms; });
    batch.samples = hrv::RrSeries(client, std::move(merged));
    out.batches.push_back(std::move(batch));
  }
  return out;
}

}  // namespace cardiostream::engine
