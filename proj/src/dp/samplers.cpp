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

#include "sifl/dp/samplers.hpp"

#include <cmath>

#include "sifl/core/errors.hpp"

namespace sifl {

namespace {

void check(Index rows, Index cols, double sigma) {
  if (rows < 0 || cols < 0) throw InvalidArgs("noise shape must be non-negative");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgs("noise sigma must be positive and finite");
  }
}

}  // namespace

std::string to_string(NoiseKind kind) {
  return kind == NoiseKind::kLaplace ? "laplace" : "gaussian";
}

NoiseKind parse_noise_kind(const std::string& text) {
  if (text == "laplace") return NoiseKind::kLaplace;
  if (text == "gaussian") return NoiseKind::kGaussian;
  throw InvalidArgs("unknown noise kind '" + text + "' (expected laplace or gaussian)");
}

Matrix sample_laplace(Index rows, Index cols, double sigma, Rng& rng) {
  check(rows, cols, sigma);
  Matrix out(rows, cols);
  for (Index i = 0; i < out.size(); ++i) out.data()[i] = rng.laplace(sigma);
  return out;
}

Matrix sample_gaussian(Index rows, Index cols, double sigma, Rng& rng) {
  check(rows, cols, sigma);
  Matrix out(rows, cols);
  for (Index i = 0; i < out.size(); ++i) out.data()[i] = sigma * rng.normal();
  return out;
}

Matrix sample_noise(NoiseKind kind, Index rows, Index cols, double sigma, Rng& rng) {
  return kind == NoiseKind::kLaplace ? sample_laplace(rows, cols, sigma, rng)
                                     : sample_gaussian(rows, cols, sigma, rng);
}

}  // namespace sifl
