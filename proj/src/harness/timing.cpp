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

#include "sifl/harness/timing.hpp"

#include <ostream>

namespace sifl {

std::vector<TimingRow> timing_rows(const ExperimentResult& result) {
  std::vector<TimingRow> rows;
  for (const TrainingTrace& trace : result.traces) {
    TimingRow row;
    row.mode = to_string(trace.mode);
    row.n = trace.n;
    row.n_tilde = trace.n_tilde;
    row.rounds = static_cast<Index>(trace.rounds.size()) - 1;
    for (const RoundRecord& r : trace.rounds) {
      row.local_s += r.times.local;
      row.aggregate_s += r.times.aggregate;
      row.coding_s += r.times.coding;
      row.wall_s += r.wall_seconds;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TimingRow> timing_sweep(const ExperimentConfig& base, std::span<const Index> sizes) {
  std::vector<TimingRow> rows;
  for (const Index n : sizes) {
    ExperimentConfig cfg = base;
    cfg.model = LinearRegression{n};
    cfg.data.source = DataSource::kSynthetic;
    cfg.data.synthetic.kind = SyntheticKind::kLinear;
    cfg.data.test_samples = 0;
    cfg.key_file.clear();
    const auto result = run_experiment(cfg);
    const auto part = timing_rows(result);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
  out << "mode,n,n_tilde,rounds,local_s,aggregate_s,coding_s,wall_s\n";
  out.precision(9);
  for (const auto& r : rows) {
    out << r.mode << ',' << r.n << ',' << r.n_tilde << ',' << r.rounds << ',' << r.local_s << ','
        << r.aggregate_s << ',' << r.coding_s << ',' << r.wall_s << '\n';
  }
}

}  // namespace sifl
