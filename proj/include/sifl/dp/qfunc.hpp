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

#ifndef SIFL_DP_QFUNC_HPP_
#define SIFL_DP_QFUNC_HPP_

namespace sifl {

// Standard normal tail, Q(x) = P(Z > x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

// Functional inverse of Q on (0, 1). Throws DomainError outside.
// |Q(q_inverse(p)) - p| <= 1e-12 p for p >= 1e-12.
double q_inverse(double p);

}  // namespace sifl

#endif  // SIFL_DP_QFUNC_HPP_
