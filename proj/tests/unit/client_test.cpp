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

#include <gtest/gtest.h>

#include <set>

#include "cardiostream/client/fleet.hpp"
#include "cardiostream/engine/engine.hpp"
#include "cardiostream/hrv/record.hpp"
#include "cardiostream/hrv/result_text.hpp"
#include "test_support.hpp"

namespace cardiostream::client {
namespace {

using testing::read_file;
using testing::TempDir;
using testing::write_file;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

SensorConfig physio(double bpm, double jitter = 0.0) {
  SensorConfig c;
  c.client_id = "p";
  c.mode = Physiologic{bpm};
  c.jitter_pct = jitter;
  return c;
}

SensorConfig rate(double s_rate, double jitter = 5.0) {
  SensorConfig c;
  c.client_id = "r";
  c.mode = RateDriven{s_rate};
  c.jitter_pct = jitter;
  return c;
}

TEST(Sensor, ValidationRejectsBadConfigs) {
  auto c = physio(59);
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = physio(181);
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = physio(60);
  c.jitter_pct = 100;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = rate(0);
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  for (const std::string bad : {"", ".x", "a/b", "a\\b"}) {
    c = rate(1);
    c.client_id = bad;
    EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument) << bad;
  }
}

TEST(Sensor, PhysiologicRateMatchesHeartRate) {
  for (double bpm : {60.0, 72.0, 120.0, 180.0}) {
    const auto s = generate_rr(physio(bpm), 60);
    EXPECT_EQ(s.size(), static_cast<std::size_t>(bpm)) << bpm;
    for (const auto& x : s.samples()) EXPECT_EQ(x.rr.micros(), std::llround(60e6 / bpm));
  }
}

TEST(Sensor, PhysiologicBytesPerTenSeconds) {
  EXPECT_EQ(hrv::serialize_rr_records(generate_rr(physio(60), 10).samples()).size(), 230u);
  EXPECT_EQ(hrv::serialize_rr_records(generate_rr(physio(180), 10).samples()).size(), 690u);
}

TEST(Sensor, JitterStaysInsideSpread) {
  const auto s = generate_rr(physio(75, 10), 600);
  for (const auto& x : s.samples()) {
    EXPECT_GE(x.rr.ms(), 800.0 * 0.9 - 1e-3);
    EXPECT_LE(x.rr.ms(), 800.0 * 1.1 + 1e-3);
  }
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s.samples()[i - 1].t_ms, s.samples()[i].t_ms);
}

TEST(Sensor, RateDrivenEmitsExactCount) {
  for (double r : {44.0, 89.0, 1424.0, 0.5}) {
    EXPECT_EQ(generate_rr(rate(r), 10).size(), static_cast<std::size_t>(std::floor(r * 10))) << r;
  }
}

TEST(Sensor, RateDrivenSpacingSupportsSpectralAnalysis) {
  const auto s = generate_rr(rate(44), 1);
  ASSERT_EQ(s.size(), 44u);
  EXPECT_EQ(s.samples()[1].t_ms - s.samples()[0].t_ms, kRateDrivenSpacingMs);
  EXPECT_GE(s.span_s(), 30.0);
}

TEST(Sensor, SeedDeterminesOutput) {
  auto a = rate(100);
  auto b = a;
  EXPECT_EQ(generate_rr(a, 5), generate_rr(b, 5));
  b.seed = 2;
  EXPECT_NE(generate_rr(a, 5), generate_rr(b, 5));
}

TEST(Sensor, DueTimesAreMonotone) {
  SensorStream stream(physio(90, 20));
  std::int64_t prev = -1;
  for (int i = 0; i < 500; ++i) {
    EXPECT_GE(stream.next_due_ms(), prev);
    prev = stream.next_due_ms();
    stream.next();
  }
  EXPECT_EQ(stream.emitted(), 500u);
}

TEST(Gateway, FlushWritesCompleteFile) {
  TempDir tmp;
  GatewayConfig g;
  g.deposit_dir = tmp.sub("in");
  const auto s = generate_rr(physio(60), 10);
  const auto p = gateway_flush("p", s.samples(), g, 3);
  EXPECT_EQ(p.filename(), "p_3.csv");
  EXPECT_EQ(read_file(p), hrv::serialize_rr_records(s.samples()));
  EXPECT_EQ(code_of([&] { gateway_flush("p", {}, g, 4); }), ErrorCode::kInvalidArgument);
}

TEST(Gateway, InterruptedFlushLeavesOnlyPartFile) {
  TempDir tmp;
  GatewayConfig g;
  g.deposit_dir = tmp.sub("in");
  FlushOptions opts;
  opts.before_rename = [](const fs::path&) { throw Error(ErrorCode::kDepositUnavailable, "killed"); };
  const auto s = generate_rr(physio(60), 10);
  EXPECT_EQ(code_of([&] { gateway_flush("p", s.samples(), g, 0, opts); }), ErrorCode::kDepositUnavailable);
  EXPECT_TRUE(fs::exists(g.deposit_dir / "p_0.csv.part"));
  EXPECT_FALSE(fs::exists(g.deposit_dir / "p_0.csv"));
  // The engine never picks up the partial file.
  engine::StreamSourceConfig src;
  src.ingest_dir = g.deposit_dir;
  EXPECT_TRUE(engine::scan_source(src, {}).empty());
}

TEST(Gateway, MissingDepositDirRetriesThenFails) {
  GatewayConfig g;
  g.deposit_dir = "/nonexistent/deposit";
  g.retry_backoff = std::chrono::milliseconds(1);
  const auto s = generate_rr(physio(60), 2);
  EXPECT_EQ(code_of([&] { gateway_flush("p", s.samples(), g, 0); }), ErrorCode::kDepositUnavailable);
}

TEST(Gateway, FetchReturnsOnlyOwnNewResultsInWindowOrder) {
  TempDir tmp;
  GatewayConfig g;
  g.deposit_dir = tmp.sub("in");
  g.fetch_dir = tmp.sub("out");
  write_file(g.fetch_dir / "alice_10.out", "sdnn_ms=1.000\n");
  write_file(g.fetch_dir / "alice_2.out", "sdnn_ms=2.000\n");
  write_file(g.fetch_dir / "alice_b_1.out", "x");
  write_file(g.fetch_dir / "bob_1.out", "x");
  write_file(g.fetch_dir / ".alice_3.out.tmp", "x");
  std::set<std::string> seen;
  const auto got = fetch_results("alice", g, seen);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].window_id, 2u);
  EXPECT_EQ(got[1].window_id, 10u);
  EXPECT_EQ(got[0].body, "sdnn_ms=2.000\n");
  EXPECT_TRUE(fetch_results("alice", g, seen).empty());
  write_file(g.fetch_dir / "alice_11.out", "y");
  EXPECT_EQ(fetch_results("alice", g, seen).size(), 1u);
  g.fetch_dir = "/nonexistent/out";
  EXPECT_EQ(code_of([&] { fetch_results("alice", g, seen); }), ErrorCode::kFetchUnavailable);
}

TEST(Fleet, SixtySecondsGivesSixFiles) {
  TempDir tmp;
  GatewayConfig g;
  g.deposit_dir = tmp.sub("in");
  auto s = physio(72, 5);
  const auto cfg = uniform_fleet(1, "dev", s, g, 60);
  ManualClock clock(kDefaultEpochMs);
  const auto report = run_fleet(cfg, clock);
  EXPECT_EQ(report.files_deposited(), 6u);
  EXPECT_EQ(report.error_count(), 0u);
  std::size_t records = 0;
  for (const auto& e : fs::directory_iterator(g.deposit_dir)) {
    records += hrv::parse_rr_records(read_file(e.path())).size();
  }
  EXPECT_EQ(records, report.clients[0].samples_generated);
}

TEST(Fleet, PhaseShiftsFlushInstants) {
  TempDir tmp;
  GatewayConfig g;
  g.deposit_dir = tmp.sub("in");
  g.phase_s = 5;
  ClientSpec spec{physio(60), g};
  spec.sensor.client_id = "c";
  ClientProcess proc(spec);
  proc.advance_to(4999);
  EXPECT_EQ(proc.report().files_deposited, 0u);
  proc.advance_to(5000);
  EXPECT_EQ(proc.report().files_deposited, 1u);
  proc.advance_to(14999);
  EXPECT_EQ(proc.report().files_deposited, 1u);
  proc.advance_to(15000);
  EXPECT_EQ(proc.report().files_deposited, 2u);
}

TEST(Fleet, FullQueueForcesEarlyFlush) {
  TempDir tmp;
  GatewayConfig g;
  g.deposit_dir = tmp.sub("in");
  ClientSpec spec{rate(100), g};
  ClientProcess proc(spec, 50);
  proc.advance_to(9999);
  EXPECT_GE(proc.report().files_deposited, 19u);
  EXPECT_LE(proc.queued(), 50u);
  EXPECT_EQ(proc.report().samples_dropped, 0u);
}

TEST(Fleet, UniqueIdsAndDisjointFiles) {
  for (std::size_t n : {20u, 100u}) {
    TempDir tmp;
    GatewayConfig g;
    g.deposit_dir = tmp.sub("in");
    const auto cfg = uniform_fleet(n, "ward", physio(60, 5), g, 20);
    std::set<std::string> ids;
    for (const auto& c : cfg.clients) ids.insert(c.sensor.client_id);
    EXPECT_EQ(ids.size(), n);
    ManualClock clock(kDefaultEpochMs);
    const auto report = run_fleet(cfg, clock);
    EXPECT_EQ(report.files_deposited(), 2 * n);
    engine::ClientPattern pattern;
    std::map<std::string, int> per_client;
    for (const auto& e : fs::directory_iterator(g.deposit_dir)) {
      ++per_client[*pattern.client_of(e.path().filename().string())];
    }
    EXPECT_EQ(per_client.size(), n);
    for (const auto& [id, count] : per_client) EXPECT_EQ(count, 2) << id;
  }
}

TEST(Fleet, DuplicateIdsRejected) {
  FleetConfig cfg;
  ClientSpec spec{physio(60), {}};
  spec.gateway.deposit_dir = "/tmp";
  cfg.clients = {spec, spec};
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
}

TEST(Fleet, RealClockThreadsDeposit) {
  TempDir tmp;
  GatewayConfig g;
  g.deposit_dir = tmp.sub("in");
  g.batch_period_s = 0.5;
  const auto cfg = uniform_fleet(3, "rt", rate(20), g, 1.0);
  SystemClock clock;
  const auto report = run_fleet(cfg, clock);
  EXPECT_EQ(report.files_deposited(), 6u);
  EXPECT_EQ(report.error_count(), 0u);
}

TEST(FleetConfigText, GeneratedClients) {
  const auto cfg = parse_fleet_config(
      "duration = 30\nclients = 3\nclient_prefix = icu\nmode = rate\ns_rate = 10\n"
      "deposit_dir = /tmp/in\nbatch_period = 5\n");
  ASSERT_EQ(cfg.clients.size(), 3u);
  EXPECT_EQ(cfg.duration_s, 30);
  EXPECT_EQ(std::get<RateDriven>(cfg.clients[0].sensor.mode).s_rate, 10);
  EXPECT_EQ(cfg.clients[2].gateway.batch_period_s, 5);
  EXPECT_NE(cfg.clients[0].sensor.seed, cfg.clients[1].sensor.seed);
  EXPECT_TRUE(cfg.clients[1].sensor.client_id.starts_with("icu"));
}

TEST(FleetConfigText, ExplicitSectionsOverrideDefaults) {
  const auto cfg = parse_fleet_config(
      "deposit_dir = /tmp/in\nhr_bpm = 60\n[client a]\n[client b]\nhr_bpm = 180\nphase = 2\n");
  ASSERT_EQ(cfg.clients.size(), 2u);
  EXPECT_EQ(std::get<Physiologic>(cfg.clients[0].sensor.mode).hr_bpm, 60);
  EXPECT_EQ(std::get<Physiologic>(cfg.clients[1].sensor.mode).hr_bpm, 180);
  EXPECT_EQ(cfg.clients[1].gateway.phase_s, 2);
  EXPECT_EQ(cfg.clients[1].sensor.client_id, "b");
}

TEST(FleetConfigText, RejectsUnknownKeys) {
  EXPECT_EQ(code_of([] { parse_fleet_config("deposit_dir=/tmp\nwhat = 1\n"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { parse_fleet_config("deposit_dir=/tmp\nmode = magic\n"); }), ErrorCode::kInvalidArgument);
}

TEST(EndToEnd, FleetAndEngineRoundTrip) {
  TempDir tmp;
  GatewayConfig g;
  g.deposit_dir = tmp.sub("in");
  g.fetch_dir = tmp.sub("out");
  g.phase_s = 5;
  const auto cfg = uniform_fleet(2, "pt", physio(72, 5), g, 60);
  engine::JobSpec job;
  job.algorithm = {hrv::Algorithm::kSdnn, 1};
  job.mode = engine::ExecutionMode::kSplitEncrypted;
  job.source.ingest_dir = g.deposit_dir;
  job.source.result_dir = g.fetch_dir;
  Fleet fleet(cfg);
  metrics::StatsLog log("e2e");
  ManualClock clock(kDefaultEpochMs);
  const auto start = clock.now_ms();
  const auto report = engine::run_streaming(job, 60, clock, log, {}, [&](std::int64_t now) { fleet.advance_to(now - start); });
  fleet.advance_to(60000);
  EXPECT_EQ(report.stats.size(), 12u);
  const auto fr = fleet.report();
  // The fetch at 60 s sees the drained final window.
  EXPECT_EQ(fr.results_fetched(), 12u);
  for (const auto& c : fr.clients) {
    for (const auto& r : c.results) {
      EXPECT_TRUE(hrv::parse_outcome_text(r.body, hrv::Algorithm::kSdnn).ok()) << r.file;
    }
  }
}

}  // namespace
}  // namespace cardiostream::client
