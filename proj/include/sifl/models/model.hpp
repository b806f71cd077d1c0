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

#ifndef SIFL_MODELS_MODEL_HPP_
#define SIFL_MODELS_MODEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sifl/core/types.hpp"
#include "sifl/models/dataset.hpp"

namespace sifl {

// y_hat = <w, x>, no bias; n = dim. Loss is half the mean squared error.
struct LinearRegression {
  Index dim = 1;
};

// Softmax regression; same layout as an Mlp with layers {dim, classes}.
struct LogisticRegression {
  Index dim = 1;
  Index classes = 2;
};

// {in, hidden..., out}; ReLU hidden units, softmax output.
struct Mlp {
  std::vector<Index> layers;
};

using ModelSpec = std::variant<LinearRegression, LogisticRegression, Mlp>;

Index parameter_count(const ModelSpec& spec);
Index input_dim(const ModelSpec& spec);
bool is_classifier(const ModelSpec& spec);
std::string describe(const ModelSpec& spec);

struct LossGrad {
  double loss = 0;
  Vector grad;
};

// Mean loss over the rows of `batch`. Throws DimensionError, EmptyBatch.
LossGrad loss_and_grad(const ModelSpec& spec, const Vector& w, const Dataset& data,
                       std::span<const Index> batch);
LossGrad loss_and_grad(const ModelSpec& spec, const Vector& w, const Dataset& data);

double mean_loss(const ModelSpec& spec, const Vector& w, const Dataset& data);

// Fraction of rows whose argmax prediction equals the label. Classifiers only.
double accuracy(const ModelSpec& spec, const Vector& w, const Dataset& data);

// Uniform on [-0.05, 0.05], drawn from the kInit stream of `seed`.
Vector init_params(const ModelSpec& spec, std::uint64_t seed);

}  // namespace sifl

#endif  // SIFL_MODELS_MODEL_HPP_
