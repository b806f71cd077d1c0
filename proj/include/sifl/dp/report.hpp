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

#ifndef SIFL_DP_REPORT_HPP_
#define SIFL_DP_REPORT_HPP_

#include <limits>
#include <string>

#include "json.hpp"
#include "sifl/core/types.hpp"
#include "sifl/dp/calculus.hpp"
#include "sifl/dp/samplers.hpp"

namespace sifl {

struct PrivacyParams {
  NoiseKind noise = NoiseKind::kGaussian;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double clip = std::numeric_limits<double>::infinity();
  // Solve sigma1, sigma2 from the targets instead of using the fixed values.
  bool calibrate = false;
  // Laplace uses only the epsilons.
  double eps_local = 1.0;
  double delta_local = 1e-5;
  double eps_global = 1.0;
  double delta_global = 1e-5;

  void validate() const;  // throws InvalidArgs
};

struct PrivacyReport {
  NoiseKind noise = NoiseKind::kGaussian;
  bool calibrated = false;
  bool has_aggregator = false;
  double sigma1 = 0;
  double sigma2 = 0;
  bool global_binding = true;

  // Without a finite clipping threshold sensitivity is unbounded and no
  // guarantee is reported.
  bool bounded = false;
  double clip = 0;
  Index local_size = 0;
  Index total_size = 0;
  double sens_local = 0;
  double sens_global = 0;

  double max_pi1_l1 = 0;
  double max_pi1_l2 = 0;
  double min_n1_l2 = 0;
  double pi1_left_l2 = 0;
  double pi2_right_l2 = 0;
  double max_pi2_abs = 0;
  double n2_l2 = 0;
  double min_n2_col_l2 = 0;
  bool l1_exact = true;

  double eps_local = 0;
  double delta_local = 0;
  double eps_global = 0;
  double delta_global = 0;
  bool local_ok = false;
  bool global_ok = false;
  double local_margin = 0;   // Gaussian only
  double global_margin = 0;  // Gaussian only

  // One name=value per line, fixed order.
  std::string to_text() const;
  nlohmann::json to_json() const;
};

// local_size is the largest client dataset, total_size the union.
PrivacyReport privacy_report(const NormProfile& profile, Index local_size, Index total_size,
                             const PrivacyParams& params);

}  // namespace sifl

#endif  // SIFL_DP_REPORT_HPP_
