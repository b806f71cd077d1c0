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

#include "sifl/models/params.hpp"

#include <string>

#include "sifl/core/errors.hpp"

namespace sifl {

namespace {
using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
}  // namespace

Index flat_size(std::span<const Index> layer_sizes) {
  if (layer_sizes.size() < 2) throw ShapeMismatch("need at least input and output sizes");
  Index total = 0;
  for (std::size_t l = 1; l < layer_sizes.size(); ++l) {
    if (layer_sizes[l - 1] < 1 || layer_sizes[l] < 1) {
      throw ShapeMismatch("layer sizes must be positive");
    }
    total += layer_sizes[l] * (layer_sizes[l - 1] + 1);
  }
  return total;
}

Vector flatten_params(std::span<const DenseLayer> layers) {
  Index total = 0;
  for (const auto& layer : layers) {
    if (layer.bias.size() != layer.weights.rows()) {
      throw ShapeMismatch("layer bias length differs from weight rows");
    }
    total += layer.weights.size() + layer.bias.size();
  }
  Vector w(total);
  Index at = 0;
  for (const auto& layer : layers) {
    Eigen::Map<RowMajor>(w.data() + at, layer.weights.rows(), layer.weights.cols()) =
        layer.weights;
    at += layer.weights.size();
    w.segment(at, layer.bias.size()) = layer.bias;
    at += layer.bias.size();
  }
  return w;
}

std::vector<DenseLayer> unflatten_params(std::span<const Index> layer_sizes, const Vector& w) {
  const Index expected = flat_size(layer_sizes);
  if (w.size() != expected) {
    throw ShapeMismatch("parameter vector has length " + std::to_string(w.size()) +
                        ", layout needs " + std::to_string(expected));
  }
  std::vector<DenseLayer> layers;
  Index at = 0;
  for (std::size_t l = 1; l < layer_sizes.size(); ++l) {
    const Index in = layer_sizes[l - 1];
    const Index out = layer_sizes[l];
    DenseLayer layer;
    layer.weights = Eigen::Map<const RowMajor>(w.data() + at, out, in);
    at += out * in;
    layer.bias = w.segment(at, out);
    at += out;
    layers.push_back(std::move(layer));
  }
  return layers;
}

}  // namespace sifl
