//
// Copyright 2026 The SIFL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SIFL_HARNESS_TIMING_HPP_
#define SIFL_HARNESS_TIMING_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sifl/harness/config.hpp"
#include "sifl/harness/experiment.hpp"

namespace sifl {

// Wall-clock seconds summed over every round of one mode.
struct TimingRow {
  std::string mode;
  Index n = 0;
  Index n_tilde = 0;
  Index rounds = 0;
  double local_s = 0;
  double aggregate_s = 0;
  double coding_s = 0;
  double wall_s = 0;
};

std::vector<TimingRow> timing_rows(const ExperimentResult& result);

// Reruns `base` with a linear model of each size in `sizes` (n = dim) on
// synthetic regression data.
std::vector<TimingRow> timing_sweep(const ExperimentConfig& base, std::span<const Index> sizes);

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);

}  // namespace sifl

#endif  // SIFL_HARNESS_TIMING_HPP_
