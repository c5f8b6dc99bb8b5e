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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "cardiostream/bench/report.hpp"
#include "cardiostream/bench/suite.hpp"
#include "cardiostream/bench/workload.hpp"
#include "cardiostream/client/fleet.hpp"
#include "cardiostream/engine/engine.hpp"
#include "cardiostream/metrics/server.hpp"

namespace cs = cardiostream;
using cs::bench::WorkloadSpec;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<WorkloadSpec> select_workloads(const std::string& labels, const std::string& kinds,
                                           const std::string& scales) {
  if (!labels.empty()) {
    std::vector<WorkloadSpec> out;
    for (const auto& l : split_list(labels)) out.push_back(WorkloadSpec::parse_label(l));
    return out;
  }
  std::vector<cs::bench::WorkloadKind> k;
  for (const auto& s : split_list(kinds)) k.push_back(cs::bench::parse_kind(s));
  std::vector<cs::bench::Scale> sc;
  for (const auto& s : split_list(scales)) sc.push_back(cs::bench::parse_scale(s));
  std::vector<WorkloadSpec> out;
  for (const auto& w : cs::bench::table_workloads()) {
    if (std::find(k.begin(), k.end(), w.kind) != k.end() && std::find(sc.begin(), sc.end(), w.scale) != sc.end()) {
      out.push_back(w);
    }
  }
  return out;
}

int cmd_gen(const std::string& kind, const std::string& scale, unsigned rate, const std::string& out,
            std::uint64_t seed, double duration) {
  const auto spec = WorkloadSpec::make(cs::bench::parse_kind(kind), cs::bench::parse_scale(scale), rate);
  const auto gen = cs::bench::gen_workload(spec, out, seed, duration);
  std::printf("%s: %zu file(s), %llu bytes (target %llu per %s)\n", spec.label().c_str(), gen.files.size(),
              static_cast<unsigned long long>(gen.total_bytes), static_cast<unsigned long long>(spec.target_size),
              spec.kind == cs::bench::WorkloadKind::kBatch ? "file" : "second");
  return 0;
}

int cmd_run(cs::bench::SuiteConfig config) {
  config.on_row = [](const cs::bench::BenchReportRow& r) {
    if (r.failed) {
      std::fprintf(stderr, "%s %s %s FAILED: %s\n", r.workload.c_str(), cs::engine::mode_name(r.mode).data(),
                   cs::hrv::algorithm_name(r.algorithm).data(), r.error.c_str());
    } else {
      std::printf("%s %s %s mean=%.3f ms sd=%.3f ms\n", r.workload.c_str(), cs::engine::mode_name(r.mode).data(),
                  cs::hrv::algorithm_name(r.algorithm).data(), r.mean_ms, r.stddev_ms);
    }
  };
  const auto result = cs::bench::run_suite(config);
  std::printf("executed %zu, skipped %zu, failed %zu -> %s\n", result.executed, result.skipped, result.failed,
              config.report.c_str());
  return result.failed == 0 ? 0 : 1;
}

int cmd_compare(const std::string& report, const std::string& out, double cv) {
  const auto comparison = cs::bench::compare_modes(cs::bench::read_report(report), cv);
  const auto csv = cs::bench::format_comparison_csv(comparison);
  cs::engine::write_file_atomically(cs::engine::fs::absolute(out), csv, {}, cs::ErrorCode::kSinkUnavailable);
  std::fputs(csv.c_str(), stdout);
  std::printf("variance threshold: %s\n",
              comparison.variance_threshold_workload ? comparison.variance_threshold_workload->c_str() : "none");
  return 0;
}

int cmd_engine(const std::string& path, double duration, bool hold) {
  const auto config = cs::engine::load_engine_config(path);
  cs::metrics::RunRegistry registry;
  auto log = registry.create_run(config.run_id, {config.job.mode, config.job.algorithm.kind, "engine"});
  cs::metrics::MetricsServer server(registry);
  const int port = server.start(config.listen_host(), config.listen_port());
  std::printf("metrics on http://%s:%d/api/v1/runs/%s/batches\n", config.listen_host().c_str(), port,
              config.run_id.c_str());
  std::fflush(stdout);

  cs::engine::EngineOptions options;
  options.scan_period_s = config.scan_period_s;
  cs::SystemClock clock;
  const auto report = cs::engine::run_streaming(config.job, duration, clock, *log, options);
  std::size_t failed = 0;
  for (const auto& s : report.stats) failed += s.ok() ? 0 : 1;
  std::printf("windows %llu, batches %zu, failed %zu, quarantined %zu\n",
              static_cast<unsigned long long>(report.windows_closed), report.stats.size(), failed,
              report.quarantined.size());
  if (hold) {
    std::printf("press Enter to stop the metrics endpoint\n");
    std::fflush(stdout);
    std::getchar();
  }
  server.stop();
  return failed == 0 ? 0 : 1;
}

int cmd_fleet(const std::string& path, double duration, std::size_t clients, const std::string& deposit,
              const std::string& fetch, bool virtual_time) {
  cs::client::FleetConfig config;
  if (!path.empty()) {
    config = cs::client::load_fleet_config(path);
  } else {
    cs::client::SensorConfig sensor;
    sensor.client_id = "c";
    cs::client::GatewayConfig gateway;
    config = cs::client::uniform_fleet(clients, "c", sensor, gateway, 60.0);
  }
  if (duration > 0) config.duration_s = duration;
  for (auto& c : config.clients) {
    if (!deposit.empty()) c.gateway.deposit_dir = deposit;
    if (!fetch.empty()) c.gateway.fetch_dir = fetch;
  }
  cs::ManualClock virtual_clock(cs::kDefaultEpochMs);
  cs::SystemClock system_clock;
  cs::Clock& clock = virtual_time ? static_cast<cs::Clock&>(virtual_clock) : system_clock;
  const auto report = cs::client::run_fleet(config, clock);
  for (const auto& c : report.clients) {
    std::printf("%s: %llu files, %llu bytes, %zu results, %zu errors\n", c.client_id.c_str(),
                static_cast<unsigned long long>(c.files_deposited), static_cast<unsigned long long>(c.bytes_deposited),
                c.results.size(), c.errors.size());
    for (const auto& e : c.errors) std::fprintf(stderr, "  %s\n", e.c_str());
  }
  return report.error_count() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cardiostream benchmark harness"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a workload from the load table");
  std::string kind = "be", scale = "small", out;
  unsigned rate = 44;
  std::uint64_t seed = 1;
  double gen_duration = 1.0;
  gen->add_option("--kind", kind, "be|se")->check(CLI::IsMember({"be", "se"}));
  gen->add_option("--scale", scale, "small|big")->check(CLI::IsMember({"small", "big"}));
  gen->add_option("--rate", rate, "Base sample rate (44, 89, 178, 356, 712, 1424)")->required();
  gen->add_option("--out", out, "Output directory")->required();
  gen->add_option("--seed", seed);
  gen->add_option("--duration", gen_duration, "SE: seconds of deposits to generate");

  auto* run = app.add_subcommand("run", "Run the mode x algorithm x load suite");
  cs::bench::SuiteConfig suite;
  std::string modes = "baseline,split,enclave", algos = "identity,sdnn,hrvbands";
  std::string workloads, kinds = "be,se", scales = "small", report, work_dir = "bench-work";
  run->add_option("--modes", modes);
  run->add_option("--algos", algos);
  run->add_option("--reps", suite.repetitions)->check(CLI::PositiveNumber);
  run->add_option("--report", report)->required();
  run->add_option("--workloads", workloads, "Comma-separated labels, e.g. BE-Small-1kB");
  run->add_option("--kinds", kinds, "Used without --workloads");
  run->add_option("--scales", scales, "Used without --workloads");
  run->add_option("--work-dir", work_dir);
  run->add_option("--duration", suite.stream_duration_s, "Streaming run length in seconds (300 for full runs)");
  run->add_option("--seed", suite.seed);
  run->add_flag("--force", suite.force, "Re-run configurations with complete rows");
  run->add_flag("--realtime", suite.realtime, "Drive streaming windows with the system clock");

  auto* compare = app.add_subcommand("compare", "Slow-down factors per workload");
  std::string compare_report, compare_out;
  double cv = 0.25;
  compare->add_option("--report", compare_report)->required();
  compare->add_option("--out", compare_out)->required();
  compare->add_option("--cv-threshold", cv, "stddev/mean ratio that flags a workload");

  auto* engine = app.add_subcommand("engine", "Run the streaming engine with its metrics endpoint");
  std::string engine_config;
  double engine_duration = 300.0;
  bool hold = false;
  engine->add_option("--config", engine_config)->required();
  engine->add_option("--duration", engine_duration);
  engine->add_flag("--hold", hold, "Keep serving metrics after the run until Enter");

  auto* fleet = app.add_subcommand("fleet", "Run a client fleet against a deposit directory");
  std::string fleet_config, deposit, fetch;
  double fleet_duration = 0;
  std::size_t clients = 1;
  bool virtual_time = false;
  fleet->add_option("--config", fleet_config);
  fleet->add_option("--duration", fleet_duration);
  fleet->add_option("--clients", clients, "Used without --config");
  fleet->add_option("--deposit-dir", deposit);
  fleet->add_option("--fetch-dir", fetch);
  fleet->add_flag("--virtual", virtual_time);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(kind, scale, rate, out, seed, gen_duration);
    if (*run) {
      suite.modes.clear();
      for (const auto& m : split_list(modes)) suite.modes.push_back(cs::engine::parse_mode(m));
      suite.algorithms.clear();
      for (const auto& a : split_list(algos)) suite.algorithms.push_back(cs::hrv::parse_algorithm(a));
      suite.workloads = select_workloads(workloads, kinds, scales);
      suite.report = report;
      suite.work_dir = work_dir;
      return cmd_run(std::move(suite));
    }
    if (*compare) return cmd_compare(compare_report, compare_out, cv);
    if (*engine) return cmd_engine(engine_config, engine_duration, hold);
    if (*fleet) return cmd_fleet(fleet_config, fleet_duration, clients, deposit, fetch, virtual_time);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
