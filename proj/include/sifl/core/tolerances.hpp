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

#ifndef SIFL_CORE_TOLERANCES_HPP_
#define SIFL_CORE_TOLERANCES_HPP_

namespace sifl::tolerance {

// Algebraic identities on dense keys (f64): left inverse, kernel annihilation.
inline constexpr double kAlgebraic = 1e-10;
// Scalar identities on the aggregator keys: pi2 * pi2_right = 1, n2 * pi2_right = 0.
inline constexpr double kScalarIdentity = 1e-12;
// Round trips through training arithmetic.
inline constexpr double kRoundTrip = 1e-9;

}  // namespace sifl::tolerance

#endif  // SIFL_CORE_TOLERANCES_HPP_
