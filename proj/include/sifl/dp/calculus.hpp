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

#ifndef SIFL_DP_CALCULUS_HPP_
#define SIFL_DP_CALCULUS_HPP_

#include "sifl/coding/keys.hpp"
#include "sifl/core/types.hpp"

namespace sifl {

enum class NormOrder { kL1 = 1, kL2 = 2 };

// 2C / size under norm clipping at C. The value is the same for both orders;
// the order only labels which norm the bound is stated in.
double sensitivity(double clip, Index size, NormOrder order = NormOrder::kL1);

struct Sensitivity {
  double clip = 0;
  Index local_size = 0;
  Index total_size = 0;
  double local = 0;   // 2C / |D_i|
  double global = 0;  // 2C / |D|

  // |D_i| is the largest client, the worst case over clients.
  static Sensitivity make(double clip, Index local_size, Index total_size);
};

// Norms entering the privacy conditions. Per-row vectors are kept so every
// condition is evaluated row by row instead of combining separate extremes.
struct NormProfile {
  Vector pi1_row_l1;  // ||Pi1^j||_1, length n_tilde
  Vector pi1_row_l2;  // ||Pi1^j||_2
  Vector n1_row_l2;   // ||N1^j||_2
  Vector pi2_abs;     // |Pi2^m|, length p
  Vector n2_col_l2;   // ||N2^m||_2
  double pi1_left_l2 = 0;
  double pi2_right_l2 = 1;
  double n2_l2 = 0;
  bool has_aggregator = false;
  // False when pi1_row_l1 holds the sqrt(n) * l2 upper bound instead.
  bool l1_exact = true;

  double max_pi1_l1() const { return pi1_row_l1.maxCoeff(); }
  double max_pi1_l2() const { return pi1_row_l2.maxCoeff(); }
  double min_n1_l2() const { return n1_row_l2.minCoeff(); }
  double max_pi2_abs() const { return pi2_abs.maxCoeff(); }
  double min_n2_col_l2() const { return n2_col_l2.minCoeff(); }
};

// Scalar norm values, for evaluating the conditions without concrete keys.
struct NormBounds {
  double pi1_l1 = 1;
  double pi1_l2 = 1;
  double n1_l2 = 1;
  double pi1_left_l2 = 1;
  double pi2_right_l2 = 1;
  double pi2_abs = 1;
  double n2_l2 = 1;
  double n2_col_l2 = 1;
};

NormProfile profile_from_bounds(const NormBounds& b);
NormProfile norm_profile(const ServerKeysd& server, const AggregatorKeysd& agg);
// Without an aggregator: ||Pi2^R||_2 = 1 and no global condition.
NormProfile norm_profile(const ServerKeysd& server);

struct LaplaceEps {
  double eps_local = 0;
  double eps_global = 0;  // NaN without an aggregator
  Index worst_row_local = 0;
  Index worst_row_global = 0;
};

// eps~ = max_j ||Pi1^j||_1 D_i / (||N1^j||_2 s1 ||Pi2^R||_2)
// eps' = max_{j,m} ||Pi1^j||_1 D |Pi2^m| / (||N1^j||_2 s1 + ||Pi1^j||_2 ||Pi1^L||_2 ||N2||_2 s2)
// with s the Laplace scale. Throws InvalidArgs on non-positive inputs.
LaplaceEps laplace_eps(const NormProfile& profile, const Sensitivity& sens, double sigma1,
                       double sigma2);

struct GaussianTargets {
  double eps_local = 1;
  double delta_local = 1e-5;
  double eps_global = 1;
  double delta_global = 1e-5;
};

// Margins are the worst lhs divided by the sum of the absolute values of its
// terms, so 0 means exactly on the boundary.
struct GaussianCheck {
  bool local_ok = false;
  bool global_ok = false;
  bool global_applicable = false;
  double local_margin = 0;
  double global_margin = 0;

  bool passed() const { return local_ok && (global_ok || !global_applicable); }
};

// Local, with sb = ||N1^j|| s1 ||Pi2^R|| and a = ||Pi1^j||_2 D_i:
//   sb^2 - sb (a / eps~) Qinv(delta~) - a^2 / (2 eps~) >= 0
// Global, with b = ||Pi1^j||_2 D |Pi2^m|:
//   (||N1^j|| s1 + ||N2^m|| s2)^2 - b^2 / (2 eps')
//     - (b / eps') Qinv(delta') (||N1^j|| s1 + ||Pi1^j|| ||Pi1^L|| ||N2|| s2) >= 0
// Throws InvalidArgs unless eps > 0 and 0 < delta < 0.5.
GaussianCheck gaussian_check(const NormProfile& profile, const Sensitivity& sens, double sigma1,
                             double sigma2, const GaussianTargets& targets);

struct SigmaSolution {
  double sigma1 = 0;
  double sigma2 = 0;
  // False when every sigma2 > 0 satisfies the global condition given sigma1;
  // sigma2 is then set equal to sigma1.
  bool global_binding = false;
};

// Smallest sigma1 meeting the local condition for every row, then the
// smallest sigma2 meeting the global condition given that sigma1.
SigmaSolution gaussian_solve_sigma(const NormProfile& profile, const Sensitivity& sens,
                                   const GaussianTargets& targets);

// Closed-form Laplace analogue: the smallest scales with eps <= targets.
SigmaSolution laplace_solve_sigma(const NormProfile& profile, const Sensitivity& sens,
                                  double eps_local, double eps_global);

}  // namespace sifl

#endif  // SIFL_DP_CALCULUS_HPP_
