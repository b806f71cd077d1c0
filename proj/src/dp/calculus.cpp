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

#include "sifl/dp/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sifl/core/errors.hpp"
#include "sifl/dp/qfunc.hpp"

namespace sifl {

namespace {

// Above this many row entries the exact structured L1 scan is replaced by
// the sqrt(n) * l2 bound.
constexpr double kExactL1Budget = 2e9;
// Solved sigmas are pushed this far (relative) into the feasible side so the
// checks pass despite rounding; far below the 1e-9 boundary tolerance.
constexpr double kFeasibleNudge = 1e-12;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgs(std::string(name) + " must be positive and finite");
  }
}

void check_targets(double eps, double delta, const char* which) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidArgs(std::string(which) + " epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 0.5)) {
    throw InvalidArgs(std::string(which) + " delta must lie in (0, 0.5)");
  }
}

void check_profile(const NormProfile& p) {
  const Index rows = p.pi1_row_l1.size();
  if (rows < 1 || p.pi1_row_l2.size() != rows || p.n1_row_l2.size() != rows) {
    throw InvalidArgs("norm profile: per-row vectors are empty or inconsistent");
  }
  if (p.pi2_abs.size() < 1 || p.n2_col_l2.size() != p.pi2_abs.size()) {
    throw InvalidArgs("norm profile: per-element vectors are empty or inconsistent");
  }
  if (!(p.n1_row_l2.minCoeff() > 0.0)) throw InvalidArgs("norm profile: zero kernel row");
  require_positive(p.pi2_right_l2, "||Pi2^R||_2");
  if (p.has_aggregator) {
    require_positive(p.pi1_left_l2, "||Pi1^L||_2");
    require_positive(p.n2_l2, "||N2||_2");
    if (!(p.n2_col_l2.minCoeff() > 0.0)) throw InvalidArgs("norm profile: zero N2 column");
  }
}

// Largest real root of a x^2 + b x + c with a > 0; -inf if none.
double largest_root(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return -std::numeric_limits<double>::infinity();
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) return 0.0;
  return std::max(q / a, c / q);
}

}  // namespace

double sensitivity(double clip, Index size, NormOrder /*order*/) {
  if (!(clip > 0.0) || !std::isfinite(clip)) {
    throw InvalidArgs("sensitivity: clipping threshold must be positive and finite");
  }
  if (size < 1) throw InvalidArgs("sensitivity: dataset size must be >= 1");
  return 2.0 * clip / static_cast<double>(size);
}

Sensitivity Sensitivity::make(double clip, Index local_size, Index total_size) {
  if (local_size > total_size) throw InvalidArgs("sensitivity: |D_i| exceeds |D|");
  Sensitivity s;
  s.clip = clip;
  s.local_size = local_size;
  s.total_size = total_size;
  s.local = sensitivity(clip, local_size);
  s.global = sensitivity(clip, total_size);
  return s;
}

NormProfile profile_from_bounds(const NormBounds& b) {
  NormProfile p;
  p.pi1_row_l1 = Vector::Constant(1, b.pi1_l1);
  p.pi1_row_l2 = Vector::Constant(1, b.pi1_l2);
  p.n1_row_l2 = Vector::Constant(1, b.n1_l2);
  p.pi2_abs = Vector::Constant(1, b.pi2_abs);
  p.n2_col_l2 = Vector::Constant(1, b.n2_col_l2);
  p.pi1_left_l2 = b.pi1_left_l2;
  p.pi2_right_l2 = b.pi2_right_l2;
  p.n2_l2 = b.n2_l2;
  p.has_aggregator = true;
  return p;
}

NormProfile norm_profile(const ServerKeysd& server) {
  const Immersiond& im = server.immersion();
  NormProfile p;
  p.pi1_row_l2 = im.pi1_row_l2_norms();
  p.n1_row_l2 = server.n1_row_l2_norms();
  if (im.is_dense()) {
    p.pi1_row_l1 = im.pi1().rowwise().lpNorm<1>();
  } else if (static_cast<double>(im.n()) * static_cast<double>(im.n_tilde()) <=
             kExactL1Budget) {
    const auto& mx = *im.mixer();
    const Index n = im.n();
    const auto v1 = mx.v1().head(n).array();
    const auto v2 = mx.v2().head(n).array();
    const auto d = im.diag().array();
    p.pi1_row_l1.resize(im.n_tilde());
    for (Index j = 0; j < im.n_tilde(); ++j) {
      const auto f = mx.row_form(j);
      double s = (d * (f.a1 * v1 + f.a2 * v2)).abs().sum();
      if (f.k < n) {
        const double mix = f.a1 * v1(f.k) + f.a2 * v2(f.k);
        s += std::fabs(d(f.k) * (1.0 - mix)) - std::fabs(d(f.k) * mix);
      }
      p.pi1_row_l1(j) = s;
    }
  } else {
    p.pi1_row_l1 = std::sqrt(static_cast<double>(im.n())) * p.pi1_row_l2;
    p.l1_exact = false;
  }
  p.pi1_left_l2 = im.pi1_left_norm2();
  p.pi2_abs = Vector::Ones(1);
  p.n2_col_l2 = Vector::Ones(1);
  p.pi2_right_l2 = 1.0;
  p.has_aggregator = false;
  return p;
}

NormProfile norm_profile(const ServerKeysd& server, const AggregatorKeysd& agg) {
  NormProfile p = norm_profile(server);
  p.pi2_abs = agg.pi2().transpose().cwiseAbs();
  p.n2_col_l2 = agg.n2().colwise().norm().transpose();
  p.pi2_right_l2 = agg.pi2_right().norm();
  p.n2_l2 = singular_values(agg.n2())(0);
  p.has_aggregator = true;
  return p;
}

LaplaceEps laplace_eps(const NormProfile& profile, const Sensitivity& sens, double sigma1,
                       double sigma2) {
  check_profile(profile);
  require_positive(sigma1, "sigma1");
  require_positive(sigma2, "sigma2");
  require_positive(sens.local, "local sensitivity");
  require_positive(sens.global, "global sensitivity");
  LaplaceEps out;
  const Vector local = (profile.pi1_row_l1.array() * sens.local) /
                       (profile.n1_row_l2.array() * sigma1 * profile.pi2_right_l2);
  out.eps_local = local.maxCoeff(&out.worst_row_local);
  if (!profile.has_aggregator) {
    out.eps_global = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const Vector global =
      (profile.pi1_row_l1.array() * sens.global * profile.max_pi2_abs()) /
      (profile.n1_row_l2.array() * sigma1 +
       profile.pi1_row_l2.array() * profile.pi1_left_l2 * profile.n2_l2 * sigma2);
  out.eps_global = global.maxCoeff(&out.worst_row_global);
  return out;
}

GaussianCheck gaussian_check(const NormProfile& profile, const Sensitivity& sens, double sigma1,
                             double sigma2, const GaussianTargets& t) {
  check_profile(profile);
  require_positive(sigma1, "sigma1");
  require_positive(sigma2, "sigma2");
  require_positive(sens.local, "local sensitivity");
  check_targets(t.eps_local, t.delta_local, "local");
  GaussianCheck out;

  const double ql = q_inverse(t.delta_local);
  double worst = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < profile.n1_row_l2.size(); ++j) {
    const double sb = profile.n1_row_l2(j) * sigma1 * profile.pi2_right_l2;
    const double a = profile.pi1_row_l2(j) * sens.local;
    const double t1 = sb * sb;
    const double t2 = sb * (a / t.eps_local) * ql;
    const double t3 = a * a / (2.0 * t.eps_local);
    worst = std::min(worst, (t1 - t2 - t3) / (t1 + std::fabs(t2) + t3));
  }
  out.local_margin = worst;
  out.local_ok = worst >= 0.0;

  out.global_applicable = profile.has_aggregator;
  if (!profile.has_aggregator) return out;
  require_positive(sens.global, "global sensitivity");
  check_targets(t.eps_global, t.delta_global, "global");
  const double qg = q_inverse(t.delta_global);
  worst = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < profile.n1_row_l2.size(); ++j) {
    const double u = profile.n1_row_l2(j) * sigma1;
    const double cross =
        u + profile.pi1_row_l2(j) * profile.pi1_left_l2 * profile.n2_l2 * sigma2;
    for (Index m = 0; m < profile.pi2_abs.size(); ++m) {
      const double b = profile.pi1_row_l2(j) * sens.global * profile.pi2_abs(m);
      const double s = u + profile.n2_col_l2(m) * sigma2;
      const double t1 = s * s;
      const double t2 = b * b / (2.0 * t.eps_global);
      const double t3 = (b / t.eps_global) * qg * cross;
      worst = std::min(worst, (t1 - t2 - t3) / (t1 + t2 + std::fabs(t3)));
    }
  }
  out.global_margin = worst;
  out.global_ok = worst >= 0.0;
  return out;
}

SigmaSolution gaussian_solve_sigma(const NormProfile& profile, const Sensitivity& sens,
                                   const GaussianTargets& t) {
  check_profile(profile);
  require_positive(sens.local, "local sensitivity");
  check_targets(t.eps_local, t.delta_local, "local");
  SigmaSolution out;

  const double ql = q_inverse(t.delta_local);
  for (Index j = 0; j < profile.n1_row_l2.size(); ++j) {
    const double a = profile.pi1_row_l2(j) * sens.local;
    // sb^2 - B sb - C = 0 with B, C >= 0: the positive root.
    const double b = a * ql / t.eps_local;
    const double c = a * a / (2.0 * t.eps_local);
    const double sb = 0.5 * (b + std::sqrt(b * b + 4.0 * c));
    out.sigma1 = std::max(out.sigma1, sb / (profile.n1_row_l2(j) * profile.pi2_right_l2));
  }
  out.sigma1 *= 1.0 + kFeasibleNudge;
  if (!(out.sigma1 > 0.0)) throw NoSolution("gaussian_solve_sigma: degenerate local condition");

  if (!profile.has_aggregator) {
    out.sigma2 = out.sigma1;
    return out;
  }
  require_positive(sens.global, "global sensitivity");
  check_targets(t.eps_global, t.delta_global, "global");
  const double qg = q_inverse(t.delta_global);
  double sigma2 = 0.0;
  for (Index j = 0; j < profile.n1_row_l2.size(); ++j) {
    const double u = profile.n1_row_l2(j) * out.sigma1;
    const double c = profile.pi1_row_l2(j) * profile.pi1_left_l2 * profile.n2_l2;
    for (Index m = 0; m < profile.pi2_abs.size(); ++m) {
      const double s = profile.n2_col_l2(m);
      const double b = profile.pi1_row_l2(j) * sens.global * profile.pi2_abs(m);
      const double bq = (b / t.eps_global) * qg;
      // s^2 x^2 + (2us - bq c) x + (u^2 - b^2 / (2 eps') - bq u) >= 0
      const double root = largest_root(s * s, 2.0 * u * s - bq * c,
                                       u * u - b * b / (2.0 * t.eps_global) - bq * u);
      sigma2 = std::max(sigma2, root);
    }
  }
  if (sigma2 > 0.0) {
    out.sigma2 = sigma2 * (1.0 + kFeasibleNudge);
    out.global_binding = true;
  } else {
    out.sigma2 = out.sigma1;
  }
  return out;
}

SigmaSolution laplace_solve_sigma(const NormProfile& profile, const Sensitivity& sens,
                                  double eps_local, double eps_global) {
  check_profile(profile);
  require_positive(sens.local, "local sensitivity");
  require_positive(eps_local, "local epsilon");
  SigmaSolution out;
  out.sigma1 = ((profile.pi1_row_l1.array() * sens.local) /
                (profile.n1_row_l2.array() * profile.pi2_right_l2 * eps_local))
                   .maxCoeff() *
               (1.0 + kFeasibleNudge);
  if (!profile.has_aggregator) {
    out.sigma2 = out.sigma1;
    return out;
  }
  require_positive(sens.global, "global sensitivity");
  require_positive(eps_global, "global epsilon");
  const Vector need =
      ((profile.pi1_row_l1.array() * sens.global * profile.max_pi2_abs() / eps_global) -
       profile.n1_row_l2.array() * out.sigma1) /
      (profile.pi1_row_l2.array() * profile.pi1_left_l2 * profile.n2_l2);
  const double sigma2 = need.maxCoeff();
  if (sigma2 > 0.0) {
    out.sigma2 = sigma2 * (1.0 + kFeasibleNudge);
    out.global_binding = true;
  } else {
    out.sigma2 = out.sigma1;
  }
  return out;
}

}  // namespace sifl
