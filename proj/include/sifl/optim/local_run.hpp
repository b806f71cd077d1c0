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

#ifndef SIFL_OPTIM_LOCAL_RUN_HPP_
#define SIFL_OPTIM_LOCAL_RUN_HPP_

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "sifl/coding/codec.hpp"
#include "sifl/core/rng.hpp"
#include "sifl/core/types.hpp"
#include "sifl/models/dataset.hpp"
#include "sifl/models/model.hpp"
#include "sifl/optim/optimizer.hpp"

namespace sifl {

// A loss over `size` records, evaluated on a subset of record indices.
struct Objective {
  Index size = 0;
  std::function<LossGrad(const Vector& w, std::span<const Index> batch)> eval;
};

// The mean loss of `spec` on `data`. Both are captured by reference.
Objective model_objective(const ModelSpec& spec, const Dataset& data);

struct LocalRunConfig {
  Index local_steps = 1;   // K >= 1
  Index batch_size = 0;    // 0 means full batch
  double clip = std::numeric_limits<double>::infinity();  // C; infinite disables

  void validate() const;
};

// Epochs of sampling without replacement; reshuffles at every epoch start.
class BatchSampler {
 public:
  BatchSampler(Index records, Index batch_size, Rng& rng);
  std::span<const Index> next();

 private:
  std::vector<Index> order_;
  Index batch_;
  Index cursor_;
  Rng& rng_;
};

// Projection onto the 2-norm ball of radius clip.
Vector clip_to_norm(const Vector& w, double clip);

// K steps of w <- w - g(w, batch).
Vector plain_local_run(OptimizerState& state, const Vector& w0, const Objective& objective,
                       const LocalRunConfig& cfg, Rng& rng);

// One step of the target optimizer: w~ - Pi1 g(Pi1^L w~, batch).
EncodedVectord target_step(const Immersiond& im, OptimizerState& state, const EncodedVectord& x,
                           const Objective& objective, std::span<const Index> batch);

// K target steps. Clipping is applied to the decoded model and written back
// along Pi1, so the kernel component of the start is carried through intact.
EncodedVectord target_local_run(const Immersiond& im, OptimizerState& state,
                                const EncodedVectord& x0, const Objective& objective,
                                const LocalRunConfig& cfg, Rng& rng);

inline EncodedVectord target_local_run(const ServerKeysd& keys, OptimizerState& state,
                                       const EncodedVectord& x0, const Objective& objective,
                                       const LocalRunConfig& cfg, Rng& rng) {
  return target_local_run(keys.immersion(), state, x0, objective, cfg, rng);
}

}  // namespace sifl

#endif  // SIFL_OPTIM_LOCAL_RUN_HPP_
