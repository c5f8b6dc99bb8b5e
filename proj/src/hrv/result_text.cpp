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

#include "cardiostream/hrv/result_text.hpp"

#include <charconv>
#include <cstdio>
#include <map>

#include "cardiostream/hrv/record.hpp"

namespace cardiostream::hrv {
namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorCode::kMalformedRecord, why); }

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) bad("bad number '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::string format_result_text(const HrvResult& result) {
  std::string out;
  if (const auto* id = std::get_if<IdentityOut>(&result)) {
    out.reserve(id->samples.size() * (kRecordSize + 7));
    for (const auto& s : id->samples) {
      out += "sample=";
      append_rr_record(out, s);
    }
  } else if (const auto* sd = std::get_if<SdnnOut>(&result)) {
    out = "sdnn_ms=" + fixed(sd->sdnn_ms, 3) + "\n";
  } else {
    const auto& b = std::get<BandsOut>(result);
    out = "lf_power=" + fixed(b.lf_power, 6) + "\nhf_power=" + fixed(b.hf_power, 6) +
          "\nhf_lf_ratio=" + fixed(b.hf_lf_ratio, 6) + "\n";
  }
  return out;
}

std::string format_outcome_text(const Outcome& outcome) {
  if (!outcome.ok()) return "error=" + std::string(error_name(outcome.error())) + "\n";
  return format_result_text(outcome.value());
}

Outcome parse_outcome_text(std::string_view text, Algorithm algorithm) {
  std::vector<std::pair<std::string_view, std::string_view>> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) bad("unterminated line");
    const auto line = text.substr(pos, nl - pos);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad("line without '='");
    lines.emplace_back(line.substr(0, eq), text.substr(pos + eq + 1, nl - pos - eq));
    pos = nl + 1;
  }

  if (lines.size() == 1 && lines[0].first == "error") {
    auto name = lines[0].second;
    name.remove_suffix(1);
    return Outcome::failure(error_from_name(name));
  }

  auto value_of = [&](std::string_view key) {
    for (const auto& [k, v] : lines) {
      if (k == key) return parse_double(v.substr(0, v.size() - 1));
    }
    bad("missing key " + std::string(key));
  };

  switch (algorithm) {
    case Algorithm::kIdentity: {
      IdentityOut out;
      for (const auto& [k, v] : lines) {
        if (k != "sample") bad("unexpected key " + std::string(k));
        // v still carries its newline, so it is a full 23-byte record.
        out.samples.push_back(parse_rr_record(v, RecordGuard{0.001, 9999.999}));
      }
      return Outcome::success(std::move(out));
    }
    case Algorithm::kSdnn:
      return Outcome::success(SdnnOut{value_of("sdnn_ms")});
    case Algorithm::kHrvBands:
      return Outcome::success(
          BandsOut{value_of("lf_power"), value_of("hf_power"), value_of("hf_lf_ratio")});
  }
  bad("unknown algorithm");
}

}  // namespace cardiostream::hrv
