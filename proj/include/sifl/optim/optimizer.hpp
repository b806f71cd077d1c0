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

#ifndef SIFL_OPTIM_OPTIMIZER_HPP_
#define SIFL_OPTIM_OPTIMIZER_HPP_

#include <string>
#include <variant>

#include "sifl/core/types.hpp"

namespace sifl {

struct Sgd {
  double lr = 0.01;
};

// v <- beta v + grad; step = lr v.
struct Momentum {
  double lr = 0.01;
  double beta = 0.9;
};

struct Adam {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

using OptimizerKind = std::variant<Sgd, Momentum, Adam>;

// Throws InvalidArgs unless lr > 0, betas in [0, 1) and eps > 0.
void validate(const OptimizerKind& kind);
std::string describe(const OptimizerKind& kind);

// Per-client optimizer internals. Always in plaintext R^n coordinates, so the
// same state drives a plain run and its immersed counterpart.
struct OptimizerState {
  OptimizerKind kind;
  Vector velocity;  // Momentum
  Vector m;         // Adam first moment
  Vector v;         // Adam second moment
  long step_count = 0;

  static OptimizerState make(const OptimizerKind& kind, Index n);
  Index n() const;
};

// Returns g such that the plaintext update is w - g, and advances `state`.
// Throws DimensionError.
Vector step_g(OptimizerState& state, const Vector& w, const Vector& grad);

}  // namespace sifl

#endif  // SIFL_OPTIM_OPTIMIZER_HPP_
