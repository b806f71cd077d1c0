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

#ifndef SIFL_DP_SAMPLERS_HPP_
#define SIFL_DP_SAMPLERS_HPP_

#include <string>

#include "sifl/core/rng.hpp"
#include "sifl/core/types.hpp"

namespace sifl {

enum class NoiseKind { kLaplace, kGaussian };

std::string to_string(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string& text);  // throws InvalidArgs

// Zero-mean i.i.d. entries, filled column-major. Laplace sigma is the scale b
// (variance 2 b^2); Gaussian sigma is the standard deviation.
Matrix sample_laplace(Index rows, Index cols, double sigma, Rng& rng);
Matrix sample_gaussian(Index rows, Index cols, double sigma, Rng& rng);
Matrix sample_noise(NoiseKind kind, Index rows, Index cols, double sigma, Rng& rng);

}  // namespace sifl

#endif  // SIFL_DP_SAMPLERS_HPP_
