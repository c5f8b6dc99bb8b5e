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

#include "cardiostream/bench/workload.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "cardiostream/client/sensor.hpp"
#include "cardiostream/engine/sink.hpp"
#include "cardiostream/error.hpp"
#include "cardiostream/hrv/record.hpp"

namespace cardiostream::bench {

std::string_view kind_name(WorkloadKind kind) { return kind == WorkloadKind::kBatch ? "be" : "se"; }
std::string_view scale_name(Scale scale) { return scale == Scale::kSmall ? "small" : "big"; }

WorkloadKind parse_kind(std::string_view name) {
  if (name == "be" || name == "BE") return WorkloadKind::kBatch;
  if (name == "se" || name == "SE") return WorkloadKind::kStreaming;
  throw Error(ErrorCode::kInvalidArgument, "unknown workload kind '" + std::string(name) + "'");
}

Scale parse_scale(std::string_view name) {
  if (name == "small" || name == "Small") return Scale::kSmall;
  if (name == "big" || name == "Big") return Scale::kBig;
  throw Error(ErrorCode::kInvalidArgument, "unknown scale '" + std::string(name) + "'");
}

WorkloadSpec WorkloadSpec::make(WorkloadKind kind, Scale scale, unsigned base_rate) {
  const auto* it = std::find(std::begin(kBaseRates), std::end(kBaseRates), base_rate);
  if (it == std::end(kBaseRates)) {
    throw Error(ErrorCode::kInvalidArgument, "rate " + std::to_string(base_rate) + " is not a table rate");
  }
  const auto row = static_cast<std::size_t>(it - std::begin(kBaseRates));
  const std::uint64_t multiplier = scale == Scale::kBig ? 1024 : 1;
  WorkloadSpec spec;
  spec.kind = kind;
  spec.scale = scale;
  spec.s_rate = static_cast<double>(base_rate * multiplier);
  spec.target_size = kSizeSteps[row] * 1024ULL * multiplier;
  return spec;
}

std::string WorkloadSpec::label() const {
  const auto steps = target_size / (scale == Scale::kBig ? 1024ULL * 1024 : 1024ULL);
  return std::string(kind == WorkloadKind::kBatch ? "BE" : "SE") + (scale == Scale::kBig ? "-Big-" : "-Small-") +
         std::to_string(steps) + (scale == Scale::kBig ? "MB" : "kB");
}

WorkloadSpec WorkloadSpec::parse_label(const std::string& label) {
  static const std::regex re(R"((BE|SE)-(Small|Big)-(\d+)(kB|MB))");
  std::smatch m;
  if (!std::regex_match(label, m, re) || (m[2] == "Small") != (m[4] == "kB")) {
    throw Error(ErrorCode::kInvalidArgument, "bad workload label '" + label + "'");
  }
  const auto step = static_cast<unsigned>(std::stoul(m[3]));
  const auto* it = std::find(std::begin(kSizeSteps), std::end(kSizeSteps), step);
  if (it == std::end(kSizeSteps)) throw Error(ErrorCode::kInvalidArgument, "bad workload size in '" + label + "'");
  return make(parse_kind(m[1].str()), parse_scale(m[2].str()), kBaseRates[it - std::begin(kSizeSteps)]);
}

std::size_t WorkloadSpec::table_index() const {
  const auto multiplier = scale == Scale::kBig ? 1024.0 : 1.0;
  const auto* it = std::find(std::begin(kBaseRates), std::end(kBaseRates),
                             static_cast<unsigned>(std::lround(s_rate / multiplier)));
  const auto row = static_cast<std::size_t>(it - std::begin(kBaseRates));
  return (kind == WorkloadKind::kBatch ? 0 : 12) + (scale == Scale::kBig ? 6 : 0) + row;
}

std::uint64_t WorkloadSpec::samples_per_unit() const { return static_cast<std::uint64_t>(std::llround(s_rate)); }

std::vector<WorkloadSpec> table_workloads() {
  std::vector<WorkloadSpec> out;
  for (auto kind : {WorkloadKind::kBatch, WorkloadKind::kStreaming}) {
    for (auto scale : {Scale::kSmall, Scale::kBig}) {
      for (auto rate : kBaseRates) out.push_back(WorkloadSpec::make(kind, scale, rate));
    }
  }
  return out;
}

std::string workload_client_id(const WorkloadSpec& spec) {
  auto id = spec.label();
  std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return id;
}

GeneratedWorkload gen_workload(const WorkloadSpec& spec, const fs::path& out_dir, std::uint64_t seed,
                               double duration_s) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir, ec)) {
    throw Error(ErrorCode::kSinkUnavailable, "cannot create " + out_dir.string());
  }
  client::SensorConfig sensor;
  sensor.client_id = workload_client_id(spec);
  sensor.mode = client::RateDriven{spec.s_rate};
  sensor.seed = seed;
  client::SensorStream stream(sensor);

  const auto per_file = spec.samples_per_unit();
  const auto units = spec.kind == WorkloadKind::kBatch
                         ? std::uint64_t{1}
                         : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(duration_s)));
  GeneratedWorkload out;
  std::string schedule;
  engine::SinkOptions sink;
  sink.durable = false;
  std::string body;
  for (std::uint64_t k = 0; k < units; ++k) {
    body.clear();
    body.reserve(per_file * hrv::kRecordSize);
    for (std::uint64_t i = 0; i < per_file; ++i) hrv::append_rr_record(body, stream.next());
    const auto name = sensor.client_id + "_" + std::to_string(k) + ".csv";
    engine::write_file_atomically(out_dir / name, body, sink, ErrorCode::kSinkUnavailable);
    out.files.push_back(out_dir / name);
    out.total_bytes += body.size();
    schedule += std::to_string(k * 1000) + " " + name + "\n";
  }
  if (spec.kind == WorkloadKind::kStreaming) {
    out.schedule = out_dir / "schedule.txt";
    engine::write_file_atomically(out.schedule, schedule, sink, ErrorCode::kSinkUnavailable);
  }
  return out;
}

}  // namespace cardiostream::bench
