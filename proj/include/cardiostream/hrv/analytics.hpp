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

#include <span>

#include "cardiostream/hrv/types.hpp"

namespace cardiostream::hrv {

// Population standard deviation (1/N) of the RR values, in ms.
// Throws Error(kInsufficientData) when fewer than two samples.
double sdnn(const RrSeries& series);
double sdnn(std::span<const double> rr_ms);

IdentityOut identity(const RrSeries& series);

HrvResult run_algorithm(Algorithm algorithm, const RrSeries& series);

// Same as run_algorithm but reports hrv errors as a failed Outcome.
Outcome run_algorithm_checked(Algorithm algorithm, const RrSeries& series);

}  // namespace cardiostream::hrv
