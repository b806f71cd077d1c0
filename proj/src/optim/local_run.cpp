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

#include "sifl/optim/local_run.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sifl/core/errors.hpp"

namespace sifl {

Objective model_objective(const ModelSpec& spec, const Dataset& data) {
  return Objective{data.size(), [&spec, &data](const Vector& w, std::span<const Index> batch) {
                     return loss_and_grad(spec, w, data, batch);
                   }};
}

void LocalRunConfig::validate() const {
  if (local_steps < 1) throw InvalidArgs("local_steps must be >= 1");
  if (batch_size < 0) throw InvalidArgs("batch_size must be >= 0");
  if (!(clip > 0.0)) throw InvalidArgs("clip threshold must be positive");
}

BatchSampler::BatchSampler(Index records, Index batch_size, Rng& rng)
    : order_(static_cast<std::size_t>(records)),
      batch_(batch_size == 0 || batch_size > records ? records : batch_size),
      cursor_(records),
      rng_(rng) {
  if (records < 1) throw EmptyDataset("cannot sample batches from an empty dataset");
  std::iota(order_.begin(), order_.end(), Index{0});
}

std::span<const Index> BatchSampler::next() {
  const auto records = static_cast<Index>(order_.size());
  if (batch_ == records) return order_;
  if (cursor_ + batch_ > records) {
    rng_.shuffle(order_.begin(), order_.end());
    cursor_ = 0;
  }
  std::span<const Index> out(order_.data() + cursor_, static_cast<std::size_t>(batch_));
  cursor_ += batch_;
  return out;
}

Vector clip_to_norm(const Vector& w, double clip) {
  if (!std::isfinite(clip)) return w;
  const double norm = w.norm();
  if (norm <= clip) return w;
  return w * (clip / norm);
}

Vector plain_local_run(OptimizerState& state, const Vector& w0, const Objective& objective,
                       const LocalRunConfig& cfg, Rng& rng) {
  cfg.validate();
  BatchSampler sampler(objective.size, cfg.batch_size, rng);
  Vector w = w0;
  for (Index k = 0; k < cfg.local_steps; ++k) {
    const auto batch = sampler.next();
    const LossGrad lg = objective.eval(w, batch);
    w -= step_g(state, w, lg.grad);
  }
  return clip_to_norm(w, cfg.clip);
}

EncodedVectord target_step(const Immersiond& im, OptimizerState& state, const EncodedVectord& x,
                           const Objective& objective, std::span<const Index> batch) {
  if (x.values.size() != im.n_tilde()) {
    throw DimensionError("target_step: encoded model has length " +
                         std::to_string(x.values.size()) + ", keys need " +
                         std::to_string(im.n_tilde()));
  }
  const Vector w = im.project(x.values);
  const LossGrad lg = objective.eval(w, batch);
  const Vector g = step_g(state, w, lg.grad);
  return {x.values - im.lift(g)};
}

EncodedVectord target_local_run(const Immersiond& im, OptimizerState& state,
                                const EncodedVectord& x0, const Objective& objective,
                                const LocalRunConfig& cfg, Rng& rng) {
  cfg.validate();
  if (x0.values.size() != im.n_tilde()) {
    throw DimensionError("target_local_run: encoded model has length " +
                         std::to_string(x0.values.size()) + ", keys need " +
                         std::to_string(im.n_tilde()));
  }
  BatchSampler sampler(objective.size, cfg.batch_size, rng);
  EncodedVectord x = x0;
  for (Index k = 0; k < cfg.local_steps; ++k) {
    x = target_step(im, state, x, objective, sampler.next());
  }
  if (std::isfinite(cfg.clip)) {
    const Vector w = im.project(x.values);
    const Vector clipped = clip_to_norm(w, cfg.clip);
    if (clipped != w) x.values -= im.lift(w - clipped);
  }
  return x;
}

}  // namespace sifl
