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

#include "cardiostream/client/fleet.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace cardiostream::client {
namespace {

std::int64_t to_ms(double s) { return static_cast<std::int64_t>(std::llround(s * 1000.0)); }

}  // namespace

void FleetConfig::validate() const {
  if (!(duration_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "fleet duration must be positive");
  std::set<std::string> ids;
  for (const auto& c : clients) {
    c.sensor.validate();
    c.gateway.validate();
    if (!ids.insert(c.sensor.client_id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate client id " + c.sensor.client_id);
    }
  }
}

ClientProcess::ClientProcess(ClientSpec spec, std::size_t queue_capacity, FlushOptions flush)
    : spec_(std::move(spec)),
      sensor_(spec_.sensor),
      capacity_(std::max<std::size_t>(1, queue_capacity)),
      flush_options_(std::move(flush)) {
  spec_.gateway.validate();
  const auto phase = to_ms(spec_.gateway.phase_s);
  next_flush_ms_ = phase > 0 ? phase : to_ms(spec_.gateway.batch_period_s);
  next_fetch_ms_ = to_ms(spec_.gateway.fetch_period_s);
  report_.client_id = spec_.sensor.client_id;
}

std::int64_t ClientProcess::next_event_ms() const {
  return std::min({sensor_.next_due_ms(), next_flush_ms_, next_fetch_ms_});
}

void ClientProcess::flush() {
  if (queue_.empty()) return;
  const std::vector<hrv::RrSample> batch(queue_.begin(), queue_.end());
  queue_.clear();
  const auto seq = seq_++;
  try {
    const auto path = gateway_flush(spec_.sensor.client_id, batch, spec_.gateway, seq, flush_options_);
    report_.deposited.push_back(path.filename().string());
    ++report_.files_deposited;
    report_.bytes_deposited += batch.size() * 23;
  } catch (const Error& e) {
    report_.samples_dropped += batch.size();
    report_.errors.emplace_back(e.what());
  }
}

void ClientProcess::fetch() {
  if (spec_.gateway.fetch_dir.empty()) return;
  try {
    auto fresh = fetch_results(spec_.sensor.client_id, spec_.gateway, seen_);
    for (auto& r : fresh) report_.results.push_back(std::move(r));
  } catch (const Error& e) {
    report_.errors.emplace_back(e.what());
  }
}

void ClientProcess::advance_to(std::int64_t rel_ms) {
  const auto period = to_ms(spec_.gateway.batch_period_s);
  const auto fetch_period = to_ms(spec_.gateway.fetch_period_s);
  while (next_event_ms() <= rel_ms) {
    if (sensor_.next_due_ms() <= next_flush_ms_ && sensor_.next_due_ms() <= next_fetch_ms_) {
      if (queue_.size() >= capacity_) flush();
      queue_.push_back(sensor_.next());
      ++report_.samples_generated;
    } else if (next_flush_ms_ <= next_fetch_ms_) {
      flush();
      next_flush_ms_ += period;
    } else {
      fetch();
      next_fetch_ms_ += fetch_period;
    }
  }
}

std::uint64_t FleetReport::files_deposited() const {
  std::uint64_t n = 0;
  for (const auto& c : clients) n += c.files_deposited;
  return n;
}

std::uint64_t FleetReport::results_fetched() const {
  std::uint64_t n = 0;
  for (const auto& c : clients) n += c.results.size();
  return n;
}

std::size_t FleetReport::error_count() const {
  std::size_t n = 0;
  for (const auto& c : clients) n += c.errors.size();
  return n;
}

Fleet::Fleet(const FleetConfig& config) {
  config.validate();
  clients_.reserve(config.clients.size());
  for (const auto& spec : config.clients) clients_.emplace_back(spec);
}

void Fleet::advance_to(std::int64_t rel_ms) {
  for (auto& c : clients_) c.advance_to(rel_ms);
}

FleetReport Fleet::report() const {
  FleetReport r;
  for (const auto& c : clients_) r.clients.push_back(c.report());
  return r;
}

FleetReport run_fleet(const FleetConfig& config, Clock& clock) {
  const auto end = to_ms(config.duration_s);
  if (clock.is_virtual()) {
    Fleet fleet(config);
    fleet.advance_to(end);
    clock.sleep_until(clock.now_ms() + end);
    return fleet.report();
  }

  config.validate();
  std::vector<ClientProcess> procs;
  for (const auto& spec : config.clients) procs.emplace_back(spec);
  const auto start = clock.now_ms();
  {
    std::vector<std::jthread> threads;
    for (auto& p : procs) {
      threads.emplace_back([&p, &clock, start, end] {
        for (auto t = p.next_event_ms(); t <= end; t = p.next_event_ms()) {
          clock.sleep_until(start + t);
          p.advance_to(std::min(end, clock.now_ms() - start));
        }
      });
    }
  }
  FleetReport r;
  for (const auto& p : procs) r.clients.push_back(p.report());
  return r;
}

FleetConfig uniform_fleet(std::size_t n, const std::string& prefix, const SensorConfig& sensor_template,
                          const GatewayConfig& gateway, double duration_s) {
  FleetConfig config;
  config.duration_s = duration_s;
  const auto width = std::to_string(n > 0 ? n - 1 : 0).size();
  for (std::size_t i = 0; i < n; ++i) {
    auto sensor = sensor_template;
    auto index = std::to_string(i);
    sensor.client_id = prefix + std::string(width - index.size(), '0') + index;
    sensor.seed = sensor_template.seed + i;
    config.clients.push_back({std::move(sensor), gateway});
  }
  return config;
}

namespace {

using KeyValues = std::map<std::string, std::string>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double number(const KeyValues& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  double v = 0.0;
  const auto& s = it->second;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidArgument, "fleet config: " + key + " is not a number: " + s);
  }
  return v;
}

std::uint64_t integer(const KeyValues& kv, const std::string& key, std::uint64_t fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::uint64_t v = 0;
  const auto& s = it->second;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidArgument, "fleet config: " + key + " is not an integer: " + s);
  }
  return v;
}

const std::set<std::string>& client_keys() {
  static const std::set<std::string> keys = {"mode",         "hr_bpm",      "s_rate", "seed",
                                              "jitter_pct",   "start_ms",    "batch_period",
                                              "fetch_period", "phase",       "deposit_dir",
                                              "fetch_dir"};
  return keys;
}

ClientSpec build_client(const std::string& id, const KeyValues& kv, std::uint64_t seed_offset) {
  ClientSpec c;
  c.sensor.client_id = id;
  const auto mode = kv.contains("mode") ? kv.at("mode") : std::string("physiologic");
  if (mode == "physiologic") {
    c.sensor.mode = Physiologic{number(kv, "hr_bpm", 72.0)};
  } else if (mode == "rate") {
    c.sensor.mode = RateDriven{number(kv, "s_rate", 44.0)};
  } else {
    throw Error(ErrorCode::kInvalidArgument, "fleet config: unknown mode " + mode);
  }
  c.sensor.seed = integer(kv, "seed", 1) + seed_offset;
  c.sensor.jitter_pct = number(kv, "jitter_pct", 5.0);
  c.sensor.start_ms = static_cast<std::int64_t>(integer(kv, "start_ms", kDefaultEpochMs));
  c.gateway.batch_period_s = number(kv, "batch_period", 10.0);
  c.gateway.fetch_period_s = number(kv, "fetch_period", 5.0);
  c.gateway.phase_s = number(kv, "phase", 0.0);
  if (kv.contains("deposit_dir")) c.gateway.deposit_dir = kv.at("deposit_dir");
  if (kv.contains("fetch_dir")) c.gateway.fetch_dir = kv.at("fetch_dir");
  return c;
}

}  // namespace

FleetConfig parse_fleet_config(const std::string& text) {
  KeyValues defaults;
  std::vector<std::pair<std::string, KeyValues>> sections;
  std::istringstream in(text);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || !t.starts_with("[client ")) {
        throw Error(ErrorCode::kInvalidArgument, "fleet config line " + std::to_string(lineno) + ": bad section");
      }
      sections.emplace_back(trim(std::string_view(t).substr(8, t.size() - 9)), KeyValues{});
      if (sections.back().first.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "fleet config line " + std::to_string(lineno) + ": empty id");
      }
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "fleet config line " + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = trim(std::string_view(t).substr(0, eq));
    const auto value = trim(std::string_view(t).substr(eq + 1));
    const bool global = key == "duration" || key == "clients" || key == "client_prefix";
    if (!global && !client_keys().contains(key)) {
      throw Error(ErrorCode::kInvalidArgument, "fleet config: unknown key " + key);
    }
    if (sections.empty()) {
      defaults[key] = value;
    } else if (global) {
      throw Error(ErrorCode::kInvalidArgument, "fleet config: " + key + " is global only");
    } else {
      sections.back().second[key] = value;
    }
  }

  FleetConfig config;
  config.duration_s = number(defaults, "duration", 60.0);
  if (sections.empty()) {
    const auto n = integer(defaults, "clients", 1);
    const auto prefix = defaults.contains("client_prefix") ? defaults.at("client_prefix") : std::string("c");
    const auto width = std::to_string(n > 0 ? n - 1 : 0).size();
    for (std::uint64_t i = 0; i < n; ++i) {
      auto index = std::to_string(i);
      config.clients.push_back(build_client(prefix + std::string(width - index.size(), '0') + index, defaults, i));
    }
  } else {
    for (const auto& [id, kv] : sections) {
      auto merged = kv;
      merged.insert(defaults.begin(), defaults.end());  // section keys win
      config.clients.push_back(build_client(id, merged, 0));
    }
  }
  config.validate();
  return config;
}

FleetConfig load_fleet_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read fleet config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_fleet_config(text.str());
}

}  // namespace cardiostream::client
