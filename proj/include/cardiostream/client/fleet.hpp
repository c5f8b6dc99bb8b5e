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

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cardiostream/client/gateway.hpp"
#include "cardiostream/client/sensor.hpp"
#include "cardiostream/clock.hpp"

namespace cardiostream::client {

struct ClientSpec {
  SensorConfig sensor;
  GatewayConfig gateway;
};

struct FleetConfig {
  std::vector<ClientSpec> clients;
  double duration_s = 60.0;

  // Throws Error(kInvalidArgument) on duplicate ids or bad members.
  void validate() const;
};

struct ClientReport {
  std::string client_id;
  std::uint64_t samples_generated = 0;
  std::uint64_t samples_dropped = 0;  // lost to failed deposits
  std::uint64_t files_deposited = 0;
  std::uint64_t bytes_deposited = 0;
  std::vector<std::string> deposited;
  std::vector<FetchedResult> results;
  std::vector<std::string> errors;
};

// Sensor -> bounded queue -> gateway, driven in virtual or real time by
// advance_to(). A full queue forces an early flush.
class ClientProcess {
 public:
  explicit ClientProcess(ClientSpec spec, std::size_t queue_capacity = 1 << 16, FlushOptions flush = {});

  // Runs every event due at or before `rel_ms` (ms since the stream start):
  // samples first, then a flush, then a fetch at equal instants.
  void advance_to(std::int64_t rel_ms);
  std::int64_t next_event_ms() const;
  std::size_t queued() const { return queue_.size(); }
  const ClientReport& report() const { return report_; }
  const ClientSpec& spec() const { return spec_; }

 private:
  void flush();
  void fetch();

  ClientSpec spec_;
  SensorStream sensor_;
  std::size_t capacity_;
  FlushOptions flush_options_;
  std::deque<hrv::RrSample> queue_;
  std::uint64_t seq_ = 0;
  std::int64_t next_flush_ms_;
  std::int64_t next_fetch_ms_;
  std::set<std::string> seen_;
  ClientReport report_;
};

struct FleetReport {
  std::vector<ClientReport> clients;
  std::uint64_t files_deposited() const;
  std::uint64_t results_fetched() const;
  std::size_t error_count() const;
};

// Lockstep driver for many clients; a failing client never stops the others.
class Fleet {
 public:
  explicit Fleet(const FleetConfig& config);
  void advance_to(std::int64_t rel_ms);
  FleetReport report() const;
  std::size_t size() const { return clients_.size(); }

 private:
  std::vector<ClientProcess> clients_;
};

// Virtual clocks run the fleet in lockstep; a real clock gives every client
// its own thread.
FleetReport run_fleet(const FleetConfig& config, Clock& clock);

// Fleet file: global key=value defaults followed by optional
// "[client <id>]" sections overriding them. Without sections, `clients = N`
// generates ids <client_prefix><index> with seeds seed + index.
//   duration, clients, client_prefix, mode (physiologic|rate), hr_bpm, s_rate,
//   seed, jitter_pct, start_ms, batch_period, fetch_period, phase,
//   deposit_dir, fetch_dir
FleetConfig parse_fleet_config(const std::string& text);
FleetConfig load_fleet_config(const fs::path& path);

// `n` clients sharing one gateway layout.
FleetConfig uniform_fleet(std::size_t n, const std::string& prefix, const SensorConfig& sensor_template,
                          const GatewayConfig& gateway, double duration_s);

}  // namespace cardiostream::client
