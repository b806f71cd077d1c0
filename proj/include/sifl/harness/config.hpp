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

#ifndef SIFL_HARNESS_CONFIG_HPP_
#define SIFL_HARNESS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sifl/coding/keys.hpp"
#include "sifl/dp/report.hpp"
#include "sifl/fl/roles.hpp"
#include "sifl/models/dataset.hpp"
#include "sifl/models/model.hpp"
#include "sifl/optim/optimizer.hpp"

namespace sifl {

enum class DataSource { kSynthetic, kCsv };

struct DataConfig {
  DataSource source = DataSource::kSynthetic;
  // Synthetic: `dim` always follows the model input. `test_samples` extra
  // rows are drawn from the same distribution and held out.
  SyntheticSpec synthetic;
  Index test_samples = 0;
  // Csv
  std::filesystem::path path;
  std::filesystem::path test_path;  // optional
  CsvSchema schema;
};

enum class TransportKind { kInProcess, kTcp };

// One file fully specifies an experiment. INI layout:
//   [experiment] modes seed noise_seed rounds local_steps clients transport
//   [model]      kind dim classes layers
//   [data]       source kind samples classes separation seed test_samples
//                path test_path header label_column
//   [optimizer]  kind lr beta beta1 beta2 eps batch_size
//   [keys]       extra | n_tilde, p scale max_condition seed layout file
//   [privacy]    noise sigma1 sigma2 clip calibrate eps_local delta_local
//                eps_global delta_global baseline_sigma
struct ExperimentConfig {
  std::vector<Mode> modes{Mode::plain()};
  std::uint64_t seed = 1;
  std::uint64_t noise_seed = 1;
  Index rounds = 20;
  Index local_steps = 2;
  Index clients = 10;
  TransportKind transport = TransportKind::kInProcess;

  ModelSpec model = LogisticRegression{10, 2};
  DataConfig data;
  OptimizerKind optimizer = Sgd{0.01};
  Index batch_size = 0;

  Index key_extra = 16;  // n_tilde - n
  KeyGenConfig keys;     // n and n_tilde derived from the model and key_extra
  std::filesystem::path key_file;

  PrivacyParams privacy;
  double baseline_sigma = 1.0;

  Index n() const { return parameter_count(model); }
  Index n_tilde() const { return n() + key_extra; }
  KeyGenConfig key_gen_config() const;
  bool needs_keys() const;
  bool has_mode(ModeKind kind) const;

  void validate() const;  // throws ConfigError
};

// Throw ConfigError, carrying the line for syntax errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical text: every field, fixed order, 17 significant digits.
// parse_config(emit_config(c)) reproduces c.
std::string emit_config(const ExperimentConfig& cfg);

}  // namespace sifl

#endif  // SIFL_HARNESS_CONFIG_HPP_
