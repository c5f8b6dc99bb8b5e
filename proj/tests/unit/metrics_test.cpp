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

#include <httplib.h>

#include <algorithm>
#include <json.hpp>
#include <random>
#include <thread>

#include "cardiostream/metrics/server.hpp"

namespace cardiostream::metrics {
namespace {

using json = nlohmann::json;

engine::BatchStats stat(std::string client, std::uint64_t window, double ms,
                        ErrorCode status = ErrorCode::kOk) {
  engine::BatchStats s;
  s.client_id = std::move(client);
  s.window_id = window;
  s.record_count = 10;
  s.processing_time_ms = ms;
  s.status = status;
  return s;
}

TEST(StatsLog, KeepsInsertionOrder) {
  StatsLog log("r");
  for (int i = 0; i < 3000; ++i) log.record(stat("c", static_cast<std::uint64_t>(i), i));
  const auto snap = log.snapshot();
  ASSERT_EQ(snap.size(), 3000u);
  for (int i = 0; i < 3000; ++i) EXPECT_EQ(snap[static_cast<std::size_t>(i)].window_id, static_cast<std::uint64_t>(i));
}

TEST(StatsLog, ConcurrentWritersAndReadersSeeConsistentPrefixes) {
  StatsLog log("r");
  constexpr int kWriters = 4;
  constexpr int kPerWriter = 5000;
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::jthread reader([&] {
    while (!done.load()) {
      const auto snap = log.snapshot();
      for (const auto& s : snap) {
        if (s.client_id.empty()) ++bad;
      }
    }
  });
  {
    std::vector<std::jthread> writers;
    for (int w = 0; w < kWriters; ++w) {
      writers.emplace_back([&, w] {
        for (int i = 0; i < kPerWriter; ++i) log.record(stat("w" + std::to_string(w), static_cast<std::uint64_t>(i), 1.0));
      });
    }
  }
  done = true;
  reader.join();
  EXPECT_EQ(bad.load(), 0);
  const auto snap = log.snapshot();
  ASSERT_EQ(snap.size(), static_cast<std::size_t>(kWriters * kPerWriter));
  // Per-writer order is preserved.
  std::map<std::string, std::uint64_t> next;
  for (const auto& s : snap) EXPECT_EQ(s.window_id, next[s.client_id]++);
}

TEST(Summary, MeanAndSampleStddev) {
  const std::vector<double> v = {1, 2, 3};
  const auto s = summarize(v, engine::ExecutionMode::kBaseline, hrv::Algorithm::kSdnn, "L");
  EXPECT_DOUBLE_EQ(s.mean_ms, 2.0);
  EXPECT_DOUBLE_EQ(s.stddev_ms, 1.0);
  EXPECT_EQ(s.n_runs, 3u);
  EXPECT_EQ(s.load_label, "L");
}

TEST(Summary, SingleValueHasZeroStddev) {
  const std::vector<double> v = {7};
  EXPECT_EQ(summarize(v, {}, {}, "").stddev_ms, 0.0);
}

TEST(Summary, EmptyGroupFails) {
  try {
    summarize({}, {}, {}, "");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGroup);
  }
}

TEST(Summary, PermutationAndTranslationProperties) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 100);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(2 + trial);
    for (auto& x : v) x = u(rng);
    const auto base = summarize(v, {}, {}, "");
    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto perm = summarize(shuffled, {}, {}, "");
    EXPECT_NEAR(perm.mean_ms, base.mean_ms, 1e-9);
    EXPECT_NEAR(perm.stddev_ms, base.stddev_ms, 1e-9);
    auto shifted = v;
    for (auto& x : shifted) x += 42.0;
    const auto tr = summarize(shifted, {}, {}, "");
    EXPECT_NEAR(tr.mean_ms, base.mean_ms + 42.0, 1e-9);
    EXPECT_NEAR(tr.stddev_ms, base.stddev_ms, 1e-9);
  }
}

TEST(Summary, RunSkipsFailedBatchesAndOptionallyFirstWindow) {
  StatsLog log("r");
  log.record(stat("c", 0, 100));
  log.record(stat("c", 1, 2));
  log.record(stat("c", 2, 4));
  log.record(stat("c", 3, 1000, ErrorCode::kSinkUnavailable));
  RunInfo info{engine::ExecutionMode::kSplitEncrypted, hrv::Algorithm::kHrvBands, "SE-Small-1kB"};
  EXPECT_NEAR(summarize_run(log, info).mean_ms, 106.0 / 3.0, 1e-12);
  const auto s = summarize_run(log, info, true);
  EXPECT_DOUBLE_EQ(s.mean_ms, 3.0);
  EXPECT_EQ(s.mode, engine::ExecutionMode::kSplitEncrypted);
  EXPECT_EQ(s.load_label, "SE-Small-1kB");
}

TEST(Registry, UnknownRun) {
  RunRegistry reg;
  EXPECT_THROW(reg.find("x"), Error);
  reg.create_run("x");
  EXPECT_NO_THROW(reg.find("x"));
  EXPECT_EQ(reg.run_ids(), std::vector<std::string>{"x"});
}

TEST(Handler, BatchesAndSummary) {
  RunRegistry reg;
  auto log = reg.create_run("r1", {engine::ExecutionMode::kSplitPlain, hrv::Algorithm::kSdnn, "L"});
  log->record(stat("c", 0, 1));
  log->record(stat("c", 1, 3));
  const auto b = handle_get(reg, "/api/v1/runs/r1/batches");
  EXPECT_EQ(b.status, 200);
  const auto arr = json::parse(b.body);
  ASSERT_EQ(arr.size(), 2u);
  EXPECT_EQ(arr[1]["window_id"], 1);
  EXPECT_EQ(arr[0]["status"], "Ok");
  const auto s = json::parse(handle_get(reg, "/api/v1/runs/r1/summary").body);
  EXPECT_EQ(s["mean_ms"], 2.0);
  EXPECT_EQ(s["mode"], "split");
  EXPECT_EQ(s["algorithm"], "sdnn");
  EXPECT_EQ(s["n_runs"], 2);
}

TEST(Handler, ErrorStatuses) {
  RunRegistry reg;
  reg.create_run("empty");
  EXPECT_EQ(handle_get(reg, "/api/v1/runs/nope/batches").status, 404);
  EXPECT_EQ(handle_get(reg, "/api/v1/runs/empty/summary").status, 409);
  EXPECT_EQ(handle_get(reg, "/api/v1/runs/empty/batches").body, "[]");
  EXPECT_EQ(handle_get(reg, "/api/v1/runs/empty/other").status, 404);
  EXPECT_EQ(handle_get(reg, "/elsewhere").status, 404);
}

TEST(Server, ServesOverHttp) {
  RunRegistry reg;
  auto log = reg.create_run("live");
  MetricsServer server(reg);
  const int port = server.start();
  httplib::Client client("127.0.0.1", port);
  log->record(stat("c", 0, 5));
  auto res = client.Get("/api/v1/runs/live/batches");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body).size(), 1u);
  res = client.Get("/api/v1/runs/ghost/summary");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(json::parse(res->body)["error"], "UnknownRun");
  server.stop();
}

}  // namespace
}  // namespace cardiostream::metrics
