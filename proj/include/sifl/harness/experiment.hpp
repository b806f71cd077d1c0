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

#ifndef SIFL_HARNESS_EXPERIMENT_HPP_
#define SIFL_HARNESS_EXPERIMENT_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sifl/coding/keys.hpp"
#include "sifl/dp/report.hpp"
#include "sifl/fl/training.hpp"
#include "sifl/harness/config.hpp"

namespace sifl {

struct ExperimentData {
  Dataset train;
  std::optional<Dataset> test;
};

// Throws ConfigError when the data does not fit the model.
ExperimentData load_data(const ExperimentConfig& cfg);

struct ExperimentKeys {
  std::optional<ServerKeysd> server;
  std::optional<AggregatorKeysd> aggregator;
};

// Loaded from cfg.key_file when set, generated otherwise. A key file whose
// dimensions disagree with the model is a ConfigError.
ExperimentKeys make_keys(const ExperimentConfig& cfg);

// The report for the keys at hand: with the aggregator whenever sifl-m2 is
// among the modes, otherwise the single-party profile.
PrivacyReport experiment_privacy_report(const ExperimentConfig& cfg, const ExperimentKeys& keys,
                                        const Partition& partition);

struct MetricsRecord {
  Index round = 0;
  Mode mode;
  double train_loss = 0;
  double test_accuracy = 0;  // NaN for regression
  PhaseTimes times;
  double wall_seconds = 0;
  Index n = 0;
  Index n_tilde = 0;
  Index p = 0;
  std::optional<PrivacyReport> privacy;  // last round of encoded modes

  nlohmann::json to_json(bool with_timing) const;
};

struct ExperimentResult {
  std::vector<MetricsRecord> records;  // mode-major, then round
  std::vector<TrainingTrace> traces;   // one per mode, in config order
  std::optional<PrivacyReport> privacy;
};

struct RunOptions {
  std::ostream* jsonl = nullptr;  // one MetricsRecord per line
  bool timing = true;             // false drops every wall-clock field
  std::filesystem::path trace_dir;  // writes <mode>.trace.jsonl when set
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

// Trace files: a header line {"mode", "n", "n_tilde", "p"} followed by one
// {"round", "train_loss", "test_accuracy", "params"} line per round.
void write_trace(std::ostream& out, const TrainingTrace& trace);
void save_trace(const std::filesystem::path& path, const TrainingTrace& trace);
TrainingTrace read_trace(std::istream& in);  // throws FormatError
TrainingTrace load_trace(const std::filesystem::path& path);

}  // namespace sifl

#endif  // SIFL_HARNESS_EXPERIMENT_HPP_
