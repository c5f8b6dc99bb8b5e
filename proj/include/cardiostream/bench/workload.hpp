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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cardiostream::bench {

namespace fs = std::filesystem;

enum class WorkloadKind : std::uint8_t { kBatch, kStreaming };
enum class Scale : std::uint8_t { kSmall, kBig };

// Base sample rates and the input loads they produce (kB, or MB at Big scale).
inline constexpr unsigned kBaseRates[] = {44, 89, 178, 356, 712, 1424};
inline constexpr unsigned kSizeSteps[] = {1, 2, 4, 8, 16, 32};

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::kBatch;
  Scale scale = Scale::kSmall;
  double s_rate = 44;             // samples per second, scale multiplier applied
  std::uint64_t target_size = 0;  // bytes per file (BE) or per second (SE)

  // Row of the workload table for a base rate. Throws Error(kInvalidArgument)
  // for rates outside the table.
  static WorkloadSpec make(WorkloadKind kind, Scale scale, unsigned base_rate);
  // Inverse of label(), e.g. "BE-Small-1kB", "SE-Big-32MB".
  static WorkloadSpec parse_label(const std::string& label);

  std::string label() const;
  std::size_t table_index() const;  // 0..23 in table order
  std::uint64_t samples_per_unit() const;  // per file (BE) or per second (SE)
};

std::string_view kind_name(WorkloadKind kind);  // "be" / "se"
std::string_view scale_name(Scale scale);       // "small" / "big"
WorkloadKind parse_kind(std::string_view name);
Scale parse_scale(std::string_view name);

// All 24 kind x scale x rate rows.
std::vector<WorkloadSpec> table_workloads();

// Client id used for a workload's generated files.
std::string workload_client_id(const WorkloadSpec& spec);

struct GeneratedWorkload {
  std::vector<fs::path> files;
  fs::path schedule;  // SE only: "<offset_ms> <file>" per line
  std::uint64_t total_bytes = 0;
};

// BE: one ingest file holding one second of samples. SE: one such file per
// second of `duration_s` plus the deposit schedule. Throws
// Error(kSinkUnavailable).
GeneratedWorkload gen_workload(const WorkloadSpec& spec, const fs::path& out_dir, std::uint64_t seed = 1,
                               double duration_s = 1.0);

}  // namespace cardiostream::bench
