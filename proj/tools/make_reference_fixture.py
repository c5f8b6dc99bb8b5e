#!/usr/bin/env python3
# Copyright 2026 The cardiostream Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the reference timing fixture and its expected comparison table.

Synthetic timings: Baseline 1x, SplitPlain 2-2.5x, SplitEncrypted 4-5x.
Relative spread stays at 5% below 4 MB and jumps to 40% from 4 MB on.
"""

import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "reference"

STEPS = [1, 2, 4, 8, 16, 32]
SPLIT = [2.0, 2.25, 2.5, 2.25, 2.0, 2.5]
ENCLAVE = [4.0, 4.5, 4.5, 4.0, 4.0, 5.0]
ALGORITHMS = ["identity", "sdnn"]
CV_THRESHOLD = 0.25


def workloads():
    for kind in ("BE", "SE"):
        for scale, unit in (("Small", "kB"), ("Big", "MB")):
            for i, step in enumerate(STEPS):
                yield f"{kind}-{scale}-{step}{unit}", i, scale == "Big" and step >= 4


def main():
    report = ["workload,mode,algorithm,mean_ms,stddev_ms,slowdown"]
    table = ["workload,algorithm,baseline_ms,split_slowdown,enclave_slowdown,enclave_vs_split,max_cv,variance_flag"]
    for label, i, noisy in workloads():
        for a, algorithm in enumerate(ALGORITHMS):
            base = 8.0 * 2 ** i * (1 + a)
            cv = 0.40 if noisy else 0.05
            means = {"baseline": base, "split": base * SPLIT[i], "enclave": base * ENCLAVE[i]}
            for mode, mean in means.items():
                report.append(f"{label},{mode},{algorithm},{mean:.6f},{mean * cv:.6f},{mean / base:.6f}")
            split = means["split"] / base
            enclave = means["enclave"] / base
            max_cv = max((m * cv) / m for m in means.values())
            flag = 1 if max_cv > CV_THRESHOLD else 0
            table.append(
                f"{label},{algorithm},{base:.6f},{split:.4f},{enclave:.4f},{enclave / split:.4f},{max_cv:.4f},{flag}")
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "reference_timings.csv").write_text("\n".join(report) + "\n")
    (OUT / "expected_comparison.csv").write_text("\n".join(table) + "\n")


if __name__ == "__main__":
    main()
