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

#ifndef SIFL_CODING_VALIDATE_HPP_
#define SIFL_CODING_VALIDATE_HPP_

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "sifl/coding/keys.hpp"
#include "sifl/core/rng.hpp"
#include "sifl/core/tolerances.hpp"

namespace sifl {

struct InvariantCheck {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<InvariantCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  const InvariantCheck* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  std::string to_text() const {
    std::ostringstream os;
    os.precision(6);
    for (const auto& c : checks) {
      os << (c.passed ? "PASS " : "FAIL ") << c.name << " residual=" << c.residual
         << " tol=" << c.tolerance;
      if (!c.detail.empty()) os << " (" << c.detail << ")";
      os << '\n';
    }
    os << (passed() ? "overall: pass" : "overall: fail") << '\n';
    return os.str();
  }
};

namespace detail {

inline InvariantCheck below(std::string name, double residual, double tol,
                            std::string detail = {}) {
  return {std::move(name), residual, tol, std::isfinite(residual) && residual < tol,
          std::move(detail)};
}

// Kernel rows/columns must be strictly nonzero; residual is the smallest norm.
template <typename Scalar>
InvariantCheck nonzero_norms(std::string name, const VectorX<Scalar>& norms,
                             const char* what) {
  Index worst = 0;
  const double min_norm = static_cast<double>(norms.minCoeff(&worst));
  InvariantCheck c{std::move(name), min_norm, kMinKernelNorm, min_norm > kMinKernelNorm, {}};
  if (!c.passed) c.detail = std::string("zero kernel ") + what + " " + std::to_string(worst);
  return c;
}

}  // namespace detail

template <typename Scalar>
void append_server_checks(const ServerKeys<Scalar>& keys, ValidationReport& report) {
  const Index n = keys.n();
  const Index kd = keys.kernel_dim();
  if (keys.is_dense()) {
    const auto& pi1 = keys.pi1();
    const auto& left = keys.pi1_left();
    const MatrixX<Scalar> gram = left * pi1;
    report.checks.push_back(detail::below(
        "left_inverse",
        static_cast<double>((gram - MatrixX<Scalar>::Identity(n, n)).norm()),
        tolerance::kAlgebraic, "||Pi1^L Pi1 - I||_F"));
    report.checks.push_back(detail::below(
        "kernel_annihilation", static_cast<double>((left * keys.n1()).norm()),
        tolerance::kAlgebraic, "||Pi1^L N1||_F"));
    const Index rank = numerical_rank(pi1, Scalar(tolerance::kAlgebraic));
    InvariantCheck rc{"rank", static_cast<double>(n - rank), 0.5, rank == n,
                      "rank(Pi1)=" + std::to_string(rank) + " n=" + std::to_string(n)};
    report.checks.push_back(rc);
  } else {
    // Probe the identities with random vectors; dense products are O(n^2).
    Rng rng(0x5eed);
    const auto& im = keys.immersion();
    double left_res = 0, kernel_res = 0;
    for (int probe = 0; probe < 4; ++probe) {
      VectorX<Scalar> x(n), r(kd);
      for (Index i = 0; i < n; ++i) x(i) = Scalar(rng.normal());
      for (Index i = 0; i < kd; ++i) r(i) = Scalar(rng.normal());
      x /= x.norm();
      r /= r.norm();
      const VectorX<Scalar> back = im.project(im.lift(x));
      left_res = std::max(left_res, static_cast<double>((back - x).norm()));
      const VectorX<Scalar> killed = im.project(keys.apply_kernel(r));
      kernel_res = std::max(kernel_res, static_cast<double>(killed.norm()));
    }
    report.checks.push_back(detail::below("left_inverse", left_res, tolerance::kAlgebraic,
                                          "probe ||Pi1^L Pi1 x - x||"));
    report.checks.push_back(detail::below("kernel_annihilation", kernel_res,
                                          tolerance::kAlgebraic, "probe ||Pi1^L N1 r||"));
    const double min_diag = static_cast<double>(im.diag().cwiseAbs().minCoeff());
    report.checks.push_back({"rank", min_diag > 0 ? 0.0 : 1.0, 0.5, min_diag > 0,
                             "structured: min |diag| = " + std::to_string(min_diag)});
  }
  report.checks.push_back(
      detail::nonzero_norms("kernel_rows_nonzero", keys.n1_row_l2_norms(), "row"));
}

template <typename Scalar>
void append_aggregator_checks(const AggregatorKeys<Scalar>& keys, ValidationReport& report) {
  using std::abs;
  const Scalar dot = keys.pi2().dot(keys.pi2_right().transpose());
  report.checks.push_back(detail::below("pi2_right_inverse",
                                        static_cast<double>(abs(dot - Scalar(1))),
                                        tolerance::kScalarIdentity, "|Pi2 Pi2^R - 1|"));
  report.checks.push_back(detail::below(
      "n2_annihilation", static_cast<double>((keys.n2() * keys.pi2_right()).norm()),
      tolerance::kScalarIdentity, "||N2 Pi2^R||"));
  const VectorX<Scalar> col_norms = keys.n2().colwise().norm().transpose();
  report.checks.push_back(detail::nonzero_norms("n2_columns_nonzero", col_norms, "column"));
}

template <typename Scalar>
ValidationReport validate_keys(const ServerKeys<Scalar>& server,
                               const AggregatorKeys<Scalar>& agg) {
  ValidationReport report;
  append_server_checks(server, report);
  append_aggregator_checks(agg, report);
  return report;
}

template <typename Scalar>
ValidationReport validate_keys(const ServerKeys<Scalar>& server) {
  ValidationReport report;
  append_server_checks(server, report);
  return report;
}

}  // namespace sifl

#endif  // SIFL_CODING_VALIDATE_HPP_
