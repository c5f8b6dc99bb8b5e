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

#include "cardiostream/bench/suite.hpp"

#include <map>
#include <tuple>

#include "cardiostream/client/fleet.hpp"
#include "cardiostream/engine/engine.hpp"
#include "cardiostream/metrics/summary.hpp"

namespace cardiostream::bench {
namespace {

using RowKey = std::tuple<std::string, engine::ExecutionMode, hrv::Algorithm>;

std::string config_tag(const WorkloadSpec& spec, engine::ExecutionMode mode, hrv::Algorithm algorithm) {
  return workload_client_id(spec) + "-" + std::string(engine::mode_name(mode)) + "-" +
         std::string(hrv::algorithm_name(algorithm));
}

fs::path fresh_dir(const fs::path& p) {
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

double measure_batch(const SuiteConfig& config, const WorkloadSpec& spec, engine::ExecutionMode mode,
                     hrv::Algorithm algorithm) {
  const auto input_dir = config.work_dir / "inputs" / spec.label();
  const auto input = input_dir / (workload_client_id(spec) + "_0.csv");
  if (!fs::exists(input)) gen_workload(spec, input_dir, config.seed);

  engine::JobSpec job;
  job.algorithm = {algorithm, 1};
  job.mode = mode;
  job.source.ingest_dir = input_dir;
  job.source.result_dir = fresh_dir(config.work_dir / "results" / config_tag(spec, mode, algorithm));
  const auto result = engine::run_batch_job(job, input);
  if (!result.outcome.ok()) {
    throw Error(result.outcome.error(), "batch job on " + spec.label() + " failed");
  }
  return result.elapsed_ms;
}

double measure_streaming(const SuiteConfig& config, const WorkloadSpec& spec, engine::ExecutionMode mode,
                         hrv::Algorithm algorithm, unsigned rep) {
  const auto root = config.work_dir / "stream" / (config_tag(spec, mode, algorithm) + "-" + std::to_string(rep));
  engine::JobSpec job;
  job.algorithm = {algorithm, 1};
  job.mode = mode;
  job.source.ingest_dir = fresh_dir(root / "ingest");
  job.source.result_dir = fresh_dir(root / "results");

  client::ClientSpec producer;
  producer.sensor.client_id = workload_client_id(spec);
  producer.sensor.mode = client::RateDriven{spec.s_rate};
  producer.sensor.seed = config.seed;
  producer.gateway.deposit_dir = job.source.ingest_dir;
  producer.gateway.batch_period_s = 1.0;  // target_size per second
  producer.gateway.phase_s = 0.5;
  client::Fleet fleet(client::FleetConfig{{producer}, config.stream_duration_s});

  metrics::StatsLog log(root.filename().string());
  ManualClock virtual_clock(kDefaultEpochMs);
  SystemClock system_clock;
  Clock& clock = config.realtime ? static_cast<Clock&>(system_clock) : virtual_clock;
  const auto start = clock.now_ms();
  engine::run_streaming(job, config.stream_duration_s, clock, log, {},
                        [&](std::int64_t now) { fleet.advance_to(now - start); });
  fs::remove_all(root);

  for (const auto& s : log.snapshot()) {
    if (!s.ok()) throw Error(s.status, "window " + std::to_string(s.window_id) + " failed");
  }
  return metrics::summarize_run(log, {mode, algorithm, spec.label()}, true).mean_ms;
}

}  // namespace

double measure_configuration(const SuiteConfig& config, const WorkloadSpec& spec, engine::ExecutionMode mode,
                             hrv::Algorithm algorithm, unsigned rep) {
  return spec.kind == WorkloadKind::kBatch ? measure_batch(config, spec, mode, algorithm)
                                           : measure_streaming(config, spec, mode, algorithm, rep);
}

SuiteResult run_suite(const SuiteConfig& config, const Measurer& measurer) {
  if (config.repetitions == 0) throw Error(ErrorCode::kInvalidArgument, "repetitions must be >= 1");
  const Measurer measure = measurer ? measurer : [&config](const WorkloadSpec& s, engine::ExecutionMode m,
                                                           hrv::Algorithm a, unsigned rep) {
    return measure_configuration(config, s, m, a, rep);
  };

  SuiteResult result;
  // Rows of an existing report are kept in place; complete ones are skipped.
  std::vector<BenchReportRow> rows;
  std::map<RowKey, std::size_t> index;
  if (!config.report.empty() && fs::exists(config.report)) {
    for (auto& r : read_report(config.report)) {
      index[{r.workload, r.mode, r.algorithm}] = rows.size();
      rows.push_back(std::move(r));
    }
  }

  for (const auto& spec : config.workloads) {
    for (const auto algorithm : config.algorithms) {
      for (const auto mode : config.modes) {
        const RowKey key{spec.label(), mode, algorithm};
        const auto prev = index.find(key);
        if (!config.force && prev != index.end() && !rows[prev->second].failed) {
          ++result.skipped;
          continue;
        }
        BenchReportRow row;
        row.workload = spec.label();
        row.mode = mode;
        row.algorithm = algorithm;
        std::vector<double> samples;
        try {
          for (unsigned rep = 0; rep < config.repetitions; ++rep) samples.push_back(measure(spec, mode, algorithm, rep));
          const auto summary = metrics::summarize(samples, mode, algorithm, row.workload);
          row.mean_ms = summary.mean_ms;
          row.stddev_ms = summary.stddev_ms;
        } catch (const std::exception& e) {
          row.failed = true;
          row.error = e.what();
          ++result.failed;
        }
        ++result.executed;

        if (const auto it = index.find(key); it != index.end()) {
          rows[it->second] = row;
        } else {
          index[key] = rows.size();
          rows.push_back(row);
        }
        compute_slowdowns(rows);
        if (!config.report.empty()) write_report(config.report, rows);
        if (config.on_row) config.on_row(rows[index[key]]);
      }
    }
  }
  compute_slowdowns(rows);
  result.rows = std::move(rows);
  return result;
}

}  // namespace cardiostream::bench
