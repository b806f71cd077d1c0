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

#ifndef SIFL_MODELS_PARAMS_HPP_
#define SIFL_MODELS_PARAMS_HPP_

#include <span>
#include <vector>

#include "sifl/core/types.hpp"

namespace sifl {

// One affine layer: out = weights * in + bias.
struct DenseLayer {
  Matrix weights;  // out x in
  Vector bias;     // out
};

// Layer sizes {in, h1, ..., out}; at least two entries.
Index flat_size(std::span<const Index> layer_sizes);

// Layout: for each layer in order, weights row-major then bias.
Vector flatten_params(std::span<const DenseLayer> layers);

// Throws ShapeMismatch unless w.size() == flat_size(layer_sizes).
std::vector<DenseLayer> unflatten_params(std::span<const Index> layer_sizes, const Vector& w);

}  // namespace sifl

#endif  // SIFL_MODELS_PARAMS_HPP_
