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

#include "sifl/dp/qfunc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sifl/core/errors.hpp"

namespace sifl {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("q_inverse: p must lie in (0, 1), got " + std::to_string(p));
  }
  if (p > 0.5) return -q_inverse(1.0 - p);
  // Q is decreasing; Q(0) = 0.5 >= p and Q(40) underflows below any double p.
  double lo = 0.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-6; ++i) {
    const double mid = 0.5 * (lo + hi);
    (q_function(mid) > p ? lo : hi) = mid;
  }
  // Newton on Q(x) - p with Q'(x) = -phi(x), kept inside the bracket.
  double x = 0.5 * (lo + hi);
  const double inv_sqrt_2pi = std::numbers::inv_sqrtpi / std::numbers::sqrt2;
  for (int i = 0; i < 50; ++i) {
    const double phi = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    const double next = x + (q_function(x) - p) / phi;
    if (!(next >= lo && next <= hi)) break;
    if (std::fabs(next - x) <= 1e-16 * std::fabs(x)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace sifl
