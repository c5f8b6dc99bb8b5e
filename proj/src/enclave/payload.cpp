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

#include "cardiostream/enclave/payload.hpp"

#include <bit>
#include <cstring>

#include "cardiostream/hrv/analytics.hpp"
#include "cardiostream/hrv/record.hpp"

namespace cardiostream::enclave {
namespace {

constexpr std::string_view kTaskMagic = "CST1";
constexpr std::string_view kReplyMagic = "CSR1";

void expect_magic(WireReader& r, std::string_view magic) {
  const auto got = r.take(magic.size());
  if (std::memcmp(got.data(), magic.data(), magic.size()) != 0) {
    throw Error(ErrorCode::kMalformedEnvelope, "bad payload magic");
  }
}

void put_f64(Bytes& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(WireReader& r) { return std::bit_cast<double>(r.u64()); }

// Records inside a payload were validated at ingestion; only the grammar is
// re-checked here.
constexpr hrv::RecordGuard kWireGuard{0.001, 9999.999};

std::vector<hrv::RrSample> read_records(WireReader& r) {
  const auto n = r.u32();
  const auto body = r.take(static_cast<std::size_t>(n) * hrv::kRecordSize);
  return hrv::parse_rr_records({reinterpret_cast<const char*>(body.data()), body.size()}, kWireGuard);
}

void write_records(Bytes& out, std::span<const hrv::RrSample> samples) {
  put_u32(out, static_cast<std::uint32_t>(samples.size()));
  out.reserve(out.size() + samples.size() * hrv::kRecordSize);
  for (const auto& s : samples) {
    const auto rec = hrv::serialize_rr_record(s);
    out.insert(out.end(), rec.begin(), rec.end());
  }
}

}  // namespace

Bytes encode_task(const engine::MicroBatch& batch) {
  Bytes out;
  put_bytes(out, as_bytes(kTaskMagic));
  put_u16(out, static_cast<std::uint16_t>(batch.client_id.size()));
  put_bytes(out, as_bytes(batch.client_id));
  put_u64(out, batch.window_id);
  put_u64(out, static_cast<std::uint64_t>(batch.window_start_ms));
  write_records(out, batch.samples.samples());
  return out;
}

engine::MicroBatch decode_task(std::span<const std::uint8_t> payload) {
  WireReader r(payload);
  expect_magic(r, kTaskMagic);
  engine::MicroBatch batch;
  const auto id = r.take(r.u16());
  batch.client_id.assign(id.begin(), id.end());
  batch.window_id = r.u64();
  batch.window_start_ms = static_cast<std::int64_t>(r.u64());
  auto samples = read_records(r);
  if (!r.done()) throw Error(ErrorCode::kMalformedEnvelope, "trailing bytes in task");
  batch.samples = hrv::RrSeries(batch.client_id, std::move(samples));
  return batch;
}

Bytes encode_reply(const hrv::Outcome& outcome) {
  Bytes out;
  put_bytes(out, as_bytes(kReplyMagic));
  out.push_back(static_cast<std::uint8_t>(outcome.error()));
  if (!outcome.ok()) {
    out.push_back(0);
    return out;
  }
  const auto& result = outcome.value();
  if (const auto* id = std::get_if<hrv::IdentityOut>(&result)) {
    out.push_back(static_cast<std::uint8_t>(hrv::Algorithm::kIdentity));
    write_records(out, id->samples);
  } else if (const auto* sd = std::get_if<hrv::SdnnOut>(&result)) {
    out.push_back(static_cast<std::uint8_t>(hrv::Algorithm::kSdnn));
    put_f64(out, sd->sdnn_ms);
  } else {
    const auto& b = std::get<hrv::BandsOut>(result);
    out.push_back(static_cast<std::uint8_t>(hrv::Algorithm::kHrvBands));
    put_f64(out, b.lf_power);
    put_f64(out, b.hf_power);
    put_f64(out, b.hf_lf_ratio);
  }
  return out;
}

hrv::Outcome decode_reply(std::span<const std::uint8_t> payload) {
  WireReader r(payload);
  expect_magic(r, kReplyMagic);
  const auto code = static_cast<ErrorCode>(r.u8());
  const auto kind = r.u8();
  if (code != ErrorCode::kOk) {
    if (!r.done()) throw Error(ErrorCode::kMalformedEnvelope, "trailing bytes in error reply");
    return hrv::Outcome::failure(code);
  }
  hrv::HrvResult result;
  switch (static_cast<hrv::Algorithm>(kind)) {
    case hrv::Algorithm::kIdentity:
      result = hrv::IdentityOut{read_records(r)};
      break;
    case hrv::Algorithm::kSdnn:
      result = hrv::SdnnOut{get_f64(r)};
      break;
    case hrv::Algorithm::kHrvBands: {
      hrv::BandsOut b;
      b.lf_power = get_f64(r);
      b.hf_power = get_f64(r);
      b.hf_lf_ratio = get_f64(r);
      result = b;
      break;
    }
    default:
      throw Error(ErrorCode::kMalformedEnvelope, "unknown result kind");
  }
  if (!r.done()) throw Error(ErrorCode::kMalformedEnvelope, "trailing bytes in reply");
  return hrv::Outcome::success(std::move(result));
}

Bytes execute_task(hrv::Algorithm algorithm, std::span<const std::uint8_t> task_payload) {
  try {
    const auto batch = decode_task(task_payload);
    return encode_reply(hrv::run_algorithm_checked(algorithm, batch.samples));
  } catch (const Error& e) {
    return encode_reply(hrv::Outcome::failure(e.code()));
  } catch (const std::exception&) {
    return encode_reply(hrv::Outcome::failure(ErrorCode::kAlgorithmError));
  }
}

}  // namespace cardiostream::enclave
