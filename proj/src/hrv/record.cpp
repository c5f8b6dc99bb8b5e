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

#include "cardiostream/hrv/record.hpp"

#include <cmath>

namespace cardiostream::hrv {
namespace {

constexpr std::int64_t kMaxTimestamp = 9'999'999'999'999;
constexpr std::int64_t kMaxRrMicros = 9'999'999;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::kMalformedRecord, why); }

std::int64_t read_digits(std::string_view s, std::size_t from, std::size_t count) {
  std::int64_t value = 0;
  for (std::size_t i = from; i < from + count; ++i) {
    if (!is_digit(s[i])) malformed("non-digit byte at offset " + std::to_string(i));
    value = value * 10 + (s[i] - '0');
  }
  return value;
}

void write_digits(char* out, std::int64_t value, std::size_t count) {
  for (std::size_t i = count; i-- > 0;) {
    out[i] = static_cast<char>('0' + value % 10);
    value /= 10;
  }
}

}  // namespace

RrSample parse_rr_record(std::string_view line, const RecordGuard& guard) {
  if (line.size() != kRecordSize) {
    malformed("record is " + std::to_string(line.size()) + " bytes, expected 23");
  }
  if (line[13] != ',' || line[18] != '.' || line[22] != '\n') malformed("bad separators");

  RrSample sample;
  sample.t_ms = read_digits(line, 0, 13);
  const std::int64_t micros = read_digits(line, 14, 4) * 1000 + read_digits(line, 19, 3);
  if (micros <= 0) malformed("rr_ms must be > 0");
  const auto lo = std::llround(guard.min_rr_ms * 1000.0);
  const auto hi = std::llround(guard.max_rr_ms * 1000.0);
  if (micros < lo || micros > hi) malformed("rr_ms outside physiologic guard");
  sample.rr = RrInterval::from_micros(micros);
  return sample;
}

RecordBytes serialize_rr_record(const RrSample& sample) {
  if (sample.t_ms < 0 || sample.t_ms > kMaxTimestamp) {
    throw Error(ErrorCode::kInvalidArgument, "timestamp does not fit 13 digits");
  }
  const std::int64_t micros = sample.rr.micros();
  if (micros < 0 || micros > kMaxRrMicros) {
    throw Error(ErrorCode::kInvalidArgument, "rr does not fit dddd.ddd");
  }
  RecordBytes out;
  write_digits(out.data(), sample.t_ms, 13);
  out[13] = ',';
  write_digits(out.data() + 14, micros / 1000, 4);
  out[18] = '.';
  write_digits(out.data() + 19, micros % 1000, 3);
  out[22] = '\n';
  return out;
}

void append_rr_record(std::string& out, const RrSample& sample) {
  const auto bytes = serialize_rr_record(sample);
  out.append(bytes.data(), bytes.size());
}

std::vector<RrSample> parse_rr_records(std::string_view body, const RecordGuard& guard) {
  if (body.size() % kRecordSize != 0) {
    throw Error(ErrorCode::kMalformedRecord,
                "body of " + std::to_string(body.size()) + " bytes is not a whole number of records");
  }
  std::vector<RrSample> out;
  out.reserve(body.size() / kRecordSize);
  for (std::size_t off = 0; off < body.size(); off += kRecordSize) {
    try {
      out.push_back(parse_rr_record(body.substr(off, kRecordSize), guard));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "record " + std::to_string(off / kRecordSize) + ": " + e.what());
    }
  }
  return out;
}

std::string serialize_rr_records(std::span<const RrSample> samples) {
  std::string out;
  out.reserve(samples.size() * kRecordSize);
  for (const auto& s : samples) append_rr_record(out, s);
  return out;
}

}  // namespace cardiostream::hrv
