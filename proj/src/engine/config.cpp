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

#include "cardiostream/engine/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cardiostream::engine {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, "bad number for " + key + ": '" + value + "'");
  }
}

}  // namespace

std::optional<std::string> ClientPattern::client_of(const std::string& name) const {
  if (!name.ends_with(suffix) || name.starts_with(".")) return std::nullopt;
  const auto stem = name.substr(0, name.size() - suffix.size());
  const auto sep = stem.rfind('_');
  if (sep == std::string::npos || sep == 0 || sep + 1 == stem.size()) return std::nullopt;
  for (std::size_t i = sep + 1; i < stem.size(); ++i) {
    if (stem[i] < '0' || stem[i] > '9') return std::nullopt;
  }
  return stem.substr(0, sep);
}

std::optional<std::uint64_t> ClientPattern::seq_of(const std::string& name) const {
  if (!client_of(name)) return std::nullopt;
  const auto stem = name.substr(0, name.size() - suffix.size());
  return std::stoull(stem.substr(stem.rfind('_') + 1));
}

std::string ClientPattern::file_name(const std::string& client_id, std::uint64_t seq) const {
  return client_id + "_" + std::to_string(seq) + suffix;
}

void StreamSourceConfig::validate() const {
  if (!(batch_interval_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "batch interval must be > 0");
  if (ingest_dir.empty() || result_dir.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ingest_dir and result_dir are required");
  }
  if (fs::weakly_canonical(ingest_dir) == fs::weakly_canonical(result_dir)) {
    throw Error(ErrorCode::kInvalidArgument, "ingest_dir and result_dir must differ");
  }
}

std::int64_t StreamSourceConfig::interval_ms() const {
  return static_cast<std::int64_t>(std::llround(batch_interval_s * 1000.0));
}

std::string EngineConfig::listen_host() const {
  const auto colon = listen.rfind(':');
  return colon == std::string::npos ? listen : listen.substr(0, colon);
}

int EngineConfig::listen_port() const {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) return 0;
  return static_cast<int>(to_double("listen", listen.substr(colon + 1)));
}

EngineConfig parse_engine_config(const std::string& text) {
  EngineConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "config line " + std::to_string(lineno) + " lacks '='");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "ingest_dir") {
      cfg.job.source.ingest_dir = value;
    } else if (key == "result_dir") {
      cfg.job.source.result_dir = value;
    } else if (key == "interval") {
      cfg.job.source.batch_interval_s = to_double(key, value);
    } else if (key == "algorithm") {
      cfg.job.algorithm.kind = hrv::parse_algorithm(value);
    } else if (key == "mode") {
      cfg.job.mode = parse_mode(value);
    } else if (key == "listen") {
      cfg.listen = value;
    } else if (key == "scan_period") {
      cfg.scan_period_s = to_double(key, value);
    } else if (key == "run_id") {
      cfg.run_id = value;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
    }
  }
  cfg.job.source.validate();
  return cfg;
}

EngineConfig load_engine_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_engine_config(ss.str());
}

}  // namespace cardiostream::engine
