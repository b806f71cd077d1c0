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

#include "sifl/dp/report.hpp"

#include <cmath>
#include <sstream>

#include "sifl/core/errors.hpp"

namespace sifl {

void PrivacyParams::validate() const {
  if (!(clip > 0.0)) throw InvalidArgs("clip must be positive (inf disables clipping)");
  if (!(delta_local >= 0.0 && delta_local < 1.0 && delta_global >= 0.0 && delta_global < 1.0)) {
    throw InvalidArgs("deltas must lie in [0, 1)");
  }
  if (calibrate) {
    if (!(eps_local > 0.0) || !(eps_global > 0.0)) {
      throw InvalidArgs("calibration targets need positive epsilons");
    }
    if (noise == NoiseKind::kGaussian &&
        !(delta_local > 0.0 && delta_local < 0.5 && delta_global > 0.0 && delta_global < 0.5)) {
      throw InvalidArgs("gaussian calibration needs deltas in (0, 0.5)");
    }
  } else if (!(sigma1 > 0.0) || !(sigma2 > 0.0) || !std::isfinite(sigma1) ||
             !std::isfinite(sigma2)) {
    throw InvalidArgs("noise sigmas must be positive and finite");
  }
}

PrivacyReport privacy_report(const NormProfile& profile, Index local_size, Index total_size,
                             const PrivacyParams& params) {
  params.validate();
  PrivacyReport r;
  r.noise = params.noise;
  r.calibrated = params.calibrate;
  r.has_aggregator = profile.has_aggregator;
  r.clip = params.clip;
  r.local_size = local_size;
  r.total_size = total_size;
  r.max_pi1_l1 = profile.max_pi1_l1();
  r.max_pi1_l2 = profile.max_pi1_l2();
  r.min_n1_l2 = profile.min_n1_l2();
  r.pi1_left_l2 = profile.pi1_left_l2;
  r.pi2_right_l2 = profile.pi2_right_l2;
  r.max_pi2_abs = profile.max_pi2_abs();
  r.n2_l2 = profile.n2_l2;
  r.min_n2_col_l2 = profile.min_n2_col_l2();
  r.l1_exact = profile.l1_exact;
  r.sigma1 = params.sigma1;
  r.sigma2 = params.sigma2;

  const double inf = std::numeric_limits<double>::infinity();
  r.bounded = std::isfinite(params.clip);
  if (!r.bounded) {
    r.eps_local = r.eps_global = inf;
    r.delta_local = params.noise == NoiseKind::kGaussian ? params.delta_local : 0.0;
    r.delta_global = params.noise == NoiseKind::kGaussian ? params.delta_global : 0.0;
    return r;
  }
  const Sensitivity sens = Sensitivity::make(params.clip, local_size, total_size);
  r.sens_local = sens.local;
  r.sens_global = sens.global;

  if (params.noise == NoiseKind::kLaplace) {
    if (params.calibrate) {
      const SigmaSolution s =
          laplace_solve_sigma(profile, sens, params.eps_local, params.eps_global);
      r.sigma1 = s.sigma1;
      r.sigma2 = s.sigma2;
      r.global_binding = s.global_binding;
    }
    const LaplaceEps e = laplace_eps(profile, sens, r.sigma1, r.sigma2);
    r.eps_local = e.eps_local;
    r.eps_global = e.eps_global;
    r.delta_local = r.delta_global = 0.0;
    r.local_ok = !params.calibrate || e.eps_local <= params.eps_local;
    r.global_ok = !profile.has_aggregator || !params.calibrate ||
                  e.eps_global <= params.eps_global;
    return r;
  }

  const GaussianTargets targets{params.eps_local, params.delta_local, params.eps_global,
                                params.delta_global};
  if (params.calibrate) {
    const SigmaSolution s = gaussian_solve_sigma(profile, sens, targets);
    r.sigma1 = s.sigma1;
    r.sigma2 = s.sigma2;
    r.global_binding = s.global_binding;
  }
  const GaussianCheck c = gaussian_check(profile, sens, r.sigma1, r.sigma2, targets);
  r.eps_local = params.eps_local;
  r.delta_local = params.delta_local;
  r.eps_global = profile.has_aggregator ? params.eps_global : std::nan("");
  r.delta_global = profile.has_aggregator ? params.delta_global : std::nan("");
  r.local_ok = c.local_ok;
  r.global_ok = c.global_ok || !c.global_applicable;
  r.local_margin = c.local_margin;
  r.global_margin = c.global_margin;
  return r;
}

std::string PrivacyReport::to_text() const {
  std::ostringstream os;
  os.precision(17);
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << "noise=" << to_string(noise) << '\n'
     << "calibrated=" << b(calibrated) << '\n'
     << "has_aggregator=" << b(has_aggregator) << '\n'
     << "sigma1=" << sigma1 << '\n'
     << "sigma2=" << sigma2 << '\n'
     << "global_binding=" << b(global_binding) << '\n'
     << "bounded=" << b(bounded) << '\n'
     << "clip=" << clip << '\n'
     << "local_size=" << local_size << '\n'
     << "total_size=" << total_size << '\n'
     << "sensitivity_local=" << sens_local << '\n'
     << "sensitivity_global=" << sens_global << '\n'
     << "max_pi1_row_l1=" << max_pi1_l1 << '\n'
     << "pi1_row_l1_exact=" << b(l1_exact) << '\n'
     << "max_pi1_row_l2=" << max_pi1_l2 << '\n'
     << "min_n1_row_l2=" << min_n1_l2 << '\n'
     << "pi1_left_l2=" << pi1_left_l2 << '\n'
     << "pi2_right_l2=" << pi2_right_l2 << '\n'
     << "max_pi2_abs=" << max_pi2_abs << '\n'
     << "n2_l2=" << n2_l2 << '\n'
     << "min_n2_col_l2=" << min_n2_col_l2 << '\n'
     << "eps_local=" << eps_local << '\n'
     << "delta_local=" << delta_local << '\n'
     << "eps_global=" << eps_global << '\n'
     << "delta_global=" << delta_global << '\n'
     << "local_ok=" << b(local_ok) << '\n'
     << "global_ok=" << b(global_ok) << '\n'
     << "local_margin=" << local_margin << '\n'
     << "global_margin=" << global_margin << '\n';
  return os.str();
}

nlohmann::json PrivacyReport::to_json() const {
  // Non-finite values serialize as null.
  return nlohmann::json{
      {"noise", to_string(noise)},
      {"calibrated", calibrated},
      {"has_aggregator", has_aggregator},
      {"sigma1", sigma1},
      {"sigma2", sigma2},
      {"global_binding", global_binding},
      {"bounded", bounded},
      {"clip", clip},
      {"local_size", local_size},
      {"total_size", total_size},
      {"sensitivity_local", sens_local},
      {"sensitivity_global", sens_global},
      {"max_pi1_row_l1", max_pi1_l1},
      {"pi1_row_l1_exact", l1_exact},
      {"max_pi1_row_l2", max_pi1_l2},
      {"min_n1_row_l2", min_n1_l2},
      {"pi1_left_l2", pi1_left_l2},
      {"pi2_right_l2", pi2_right_l2},
      {"max_pi2_abs", max_pi2_abs},
      {"n2_l2", n2_l2},
      {"min_n2_col_l2", min_n2_col_l2},
      {"eps_local", eps_local},
      {"delta_local", delta_local},
      {"eps_global", eps_global},
      {"delta_global", delta_global},
      {"local_ok", local_ok},
      {"global_ok", global_ok},
      {"local_margin", local_margin},
      {"global_margin", global_margin},
  };
}

}  // namespace sifl
