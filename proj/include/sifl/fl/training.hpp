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

#ifndef SIFL_FL_TRAINING_HPP_
#define SIFL_FL_TRAINING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "sifl/coding/keys.hpp"
#include "sifl/fl/roles.hpp"
#include "sifl/fl/transport.hpp"
#include "sifl/models/dataset.hpp"
#include "sifl/models/model.hpp"
#include "sifl/optim/local_run.hpp"
#include "sifl/optim/optimizer.hpp"

namespace sifl {

struct TrainingSetup {
  ModelSpec model;
  const Dataset* train = nullptr;
  const Dataset* test = nullptr;  // accuracy falls back to `train` when null
  Partition partition;
  OptimizerKind optimizer = Sgd{};
  LocalRunConfig local;
  ProtocolConfig protocol;
  // Seeds w0 and the client minibatch streams; shared across modes so their
  // traces are comparable.
  std::uint64_t seed = 0;
  std::optional<ServerKeysd> server_keys;
  std::optional<AggregatorKeysd> aggregator_keys;
  bool evaluate = true;  // per-round loss and accuracy
};

struct MessageCounts {
  Index broadcasts = 0;
  Index uploads = 0;
  Index aggregates = 0;
};

struct RoundRecord {
  Index round = 0;
  // Plaintext global model after `round` rounds, reconstructed by an
  // omniscient observer holding every key. No role computes it in SiflM2.
  Vector global;
  double train_loss = 0;
  double test_accuracy = 0;  // NaN for regression or when not evaluated
  PhaseTimes times;
  double wall_seconds = 0;
  MessageCounts counts;  // traffic of the round that produced this model
};

struct TrainingTrace {
  Mode mode;
  Index n = 0;
  Index n_tilde = 0;  // 0 in plaintext modes
  Index p = 0;        // 0 unless SiflM2
  std::vector<RoundRecord> rounds;  // rounds[t].round == t, t = 0..T
  Vector final_model;               // payload of the server's Done
};

// Throws KeyMismatch, InvalidArgs, and any role or transport error.
TrainingTrace run_training(const TrainingSetup& setup, Transport& transport);
TrainingTrace run_training(const TrainingSetup& setup);

}  // namespace sifl

#endif  // SIFL_FL_TRAINING_HPP_
