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

#include "sifl/optim/optimizer.hpp"

#include <cmath>
#include <sstream>

#include "sifl/core/errors.hpp"

namespace sifl {

namespace {

void check_beta(double b, const char* name) {
  if (!(b >= 0.0 && b < 1.0)) throw InvalidArgs(std::string(name) + " must lie in [0, 1)");
}

}  // namespace

void validate(const OptimizerKind& kind) {
  std::visit(
      [](const auto& k) {
        if (!(k.lr > 0.0) || !std::isfinite(k.lr)) {
          throw InvalidArgs("learning rate must be positive");
        }
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Momentum>) {
          check_beta(k.beta, "beta");
        } else if constexpr (std::is_same_v<K, Adam>) {
          check_beta(k.beta1, "beta1");
          check_beta(k.beta2, "beta2");
          if (!(k.eps > 0.0)) throw InvalidArgs("adam eps must be positive");
        }
      },
      kind);
}

std::string describe(const OptimizerKind& kind) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Sgd>) {
          os << "sgd(lr=" << k.lr << ")";
        } else if constexpr (std::is_same_v<K, Momentum>) {
          os << "momentum(lr=" << k.lr << ",beta=" << k.beta << ")";
        } else {
          os << "adam(lr=" << k.lr << ",beta1=" << k.beta1 << ",beta2=" << k.beta2
             << ",eps=" << k.eps << ")";
        }
      },
      kind);
  return os.str();
}

OptimizerState OptimizerState::make(const OptimizerKind& kind, Index n) {
  validate(kind);
  if (n < 1) throw DimensionError("optimizer state needs n >= 1");
  OptimizerState s;
  s.kind = kind;
  if (std::holds_alternative<Momentum>(kind)) s.velocity = Vector::Zero(n);
  if (std::holds_alternative<Adam>(kind)) {
    s.m = Vector::Zero(n);
    s.v = Vector::Zero(n);
  }
  return s;
}

Index OptimizerState::n() const {
  if (std::holds_alternative<Momentum>(kind)) return velocity.size();
  if (std::holds_alternative<Adam>(kind)) return m.size();
  return -1;  // stateless: any length
}

Vector step_g(OptimizerState& state, const Vector& w, const Vector& grad) {
  if (w.size() != grad.size()) {
    throw DimensionError("step_g: w has length " + std::to_string(w.size()) +
                         ", grad has length " + std::to_string(grad.size()));
  }
  const Index n = state.n();
  if (n >= 0 && n != grad.size()) {
    throw DimensionError("step_g: optimizer state has length " + std::to_string(n));
  }
  ++state.step_count;
  return std::visit(
      [&](const auto& k) -> Vector {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Sgd>) {
          return k.lr * grad;
        } else if constexpr (std::is_same_v<K, Momentum>) {
          state.velocity = k.beta * state.velocity + grad;
          return k.lr * state.velocity;
        } else {
          state.m = k.beta1 * state.m + (1.0 - k.beta1) * grad;
          state.v = k.beta2 * state.v + (1.0 - k.beta2) * grad.cwiseAbs2();
          const double t = static_cast<double>(state.step_count);
          const double c1 = 1.0 - std::pow(k.beta1, t);
          const double c2 = 1.0 - std::pow(k.beta2, t);
          return (k.lr * (state.m.array() / c1) /
                  ((state.v.array() / c2).sqrt() + k.eps))
              .matrix();
        }
      },
      state.kind);
}

}  // namespace sifl
