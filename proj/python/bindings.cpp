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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cardiostream/bench/report.hpp"
#include "cardiostream/bench/workload.hpp"
#include "cardiostream/client/sensor.hpp"
#include "cardiostream/engine/engine.hpp"
#include "cardiostream/hrv/analytics.hpp"
#include "cardiostream/hrv/record.hpp"
#include "cardiostream/hrv/result_text.hpp"
#include "cardiostream/hrv/spectrum.hpp"

namespace py = pybind11;
namespace cs = cardiostream;

namespace {

using Pair = std::pair<std::int64_t, double>;  // (t_ms, rr_ms)

cs::hrv::RrSeries to_series(const std::vector<Pair>& samples, const std::string& client_id = "py") {
  cs::hrv::RrSeries series(client_id);
  series.reserve(samples.size());
  for (const auto& [t, rr] : samples) series.push_back({t, cs::hrv::RrInterval::from_ms(rr)});
  return series;
}

std::vector<Pair> to_pairs(std::span<const cs::hrv::RrSample> samples) {
  std::vector<Pair> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.emplace_back(s.t_ms, s.rr.ms());
  return out;
}

py::dict bands_dict(const cs::hrv::BandsOut& b) {
  py::dict d;
  d["lf_power"] = b.lf_power;
  d["hf_power"] = b.hf_power;
  d["hf_lf_ratio"] = b.hf_lf_ratio;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Confidential HRV stream processing core";

  // The module keeps the type alive.
  static PyObject* error_type = py::exception<cs::Error>(m, "CardiostreamError", PyExc_RuntimeError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cs::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(cs::error_name(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.attr("RECORD_SIZE") = cs::hrv::kRecordSize;

  m.def(
      "parse_records",
      [](const std::string& body) { return to_pairs(cs::hrv::parse_rr_records(body)); },
      py::arg("body"), "Parses 23-byte RR records into (t_ms, rr_ms) pairs.");
  m.def(
      "serialize_records",
      [](const std::vector<Pair>& samples) {
        const auto series = to_series(samples);
        return py::bytes(cs::hrv::serialize_rr_records(series.samples()));
      },
      py::arg("samples"));

  m.def(
      "sdnn", [](const std::vector<double>& rr_ms) { return cs::hrv::sdnn(rr_ms); }, py::arg("rr_ms"),
      "Population standard deviation of RR intervals in ms.");
  m.def(
      "hrv_bands", [](const std::vector<Pair>& samples) { return bands_dict(cs::hrv::hrv_bands(to_series(samples))); },
      py::arg("samples"), "LF/HF band power from a Lomb periodogram.");
  m.def(
      "run_algorithm",
      [](const std::string& algorithm, const std::vector<Pair>& samples) {
        return cs::hrv::format_outcome_text(
            cs::hrv::run_algorithm_checked(cs::hrv::parse_algorithm(algorithm), to_series(samples)));
      },
      py::arg("algorithm"), py::arg("samples"), "Runs an algorithm and returns the result file body.");

  m.def(
      "generate_rr",
      [](const std::string& client_id, const std::string& mode, double rate, double duration_s, std::uint64_t seed,
         double jitter_pct) {
        cs::client::SensorConfig cfg;
        cfg.client_id = client_id;
        if (mode == "physiologic") {
          cfg.mode = cs::client::Physiologic{rate};
        } else if (mode == "rate") {
          cfg.mode = cs::client::RateDriven{rate};
        } else {
          throw cs::Error(cs::ErrorCode::kInvalidArgument, "mode must be 'physiologic' or 'rate'");
        }
        cfg.seed = seed;
        cfg.jitter_pct = jitter_pct;
        return to_pairs(cs::client::generate_rr(cfg, duration_s).samples());
      },
      py::arg("client_id"), py::arg("mode") = "physiologic", py::arg("rate") = 72.0, py::arg("duration_s") = 60.0,
      py::arg("seed") = 1, py::arg("jitter_pct") = 5.0,
      "Synthetic RR stream; rate is bpm for physiologic and samples/s for rate mode.");

  m.def(
      "gen_workload",
      [](const std::string& label, const std::filesystem::path& out_dir, std::uint64_t seed, double duration_s) {
        const auto out = cs::bench::gen_workload(cs::bench::WorkloadSpec::parse_label(label), out_dir, seed,
                                                 duration_s);
        py::dict d;
        d["files"] = out.files;
        d["total_bytes"] = out.total_bytes;
        if (!out.schedule.empty()) d["schedule"] = out.schedule;
        return d;
      },
      py::arg("label"), py::arg("out_dir"), py::arg("seed") = 1, py::arg("duration_s") = 1.0);

  m.def(
      "run_batch_job",
      [](const std::string& algorithm, const std::string& mode, const std::filesystem::path& input_file,
         const std::filesystem::path& result_dir) {
        cs::engine::JobSpec job;
        job.algorithm = {cs::hrv::parse_algorithm(algorithm), 1};
        job.mode = cs::engine::parse_mode(mode);
        job.source.ingest_dir = input_file.parent_path();
        job.source.result_dir = result_dir;
        const auto r = cs::engine::run_batch_job(job, input_file);
        py::dict d;
        d["ok"] = r.outcome.ok();
        d["result"] = cs::hrv::format_outcome_text(r.outcome);
        d["elapsed_ms"] = r.elapsed_ms;
        d["record_count"] = r.record_count;
        if (r.result_file) d["result_file"] = *r.result_file;
        return d;
      },
      py::arg("algorithm"), py::arg("mode"), py::arg("input_file"), py::arg("result_dir") = std::filesystem::path(),
      "Runs one batch job; mode is baseline, split or enclave.");

  m.def(
      "compare_report",
      [](const std::string& report_csv, double cv_threshold) {
        return cs::bench::format_comparison_csv(
            cs::bench::compare_modes(cs::bench::parse_report_csv(report_csv), cv_threshold));
      },
      py::arg("report_csv"), py::arg("cv_threshold") = 0.25,
      "Slowdown factors per (workload, algorithm) from a bench report.");
}
