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

#include "sifl/harness/equivalence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sifl/core/errors.hpp"

namespace sifl {

EquivalenceReport equivalence_report(const TrainingTrace& a, const TrainingTrace& b, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgs("equivalence tolerance must be non-negative");
  if (a.rounds.size() != b.rounds.size()) {
    throw ShapeMismatch("traces have " + std::to_string(a.rounds.size()) + " and " +
                        std::to_string(b.rounds.size()) + " rounds");
  }
  EquivalenceReport rep;
  rep.tol = tol;
  for (std::size_t t = 0; t < a.rounds.size(); ++t) {
    const RoundRecord& ra = a.rounds[t];
    const RoundRecord& rb = b.rounds[t];
    if (ra.global.size() != rb.global.size()) {
      throw ShapeMismatch("round " + std::to_string(t) + ": models have " +
                          std::to_string(ra.global.size()) + " and " +
                          std::to_string(rb.global.size()) + " parameters");
    }
    RoundGap g;
    g.round = ra.round;
    g.param_gap = ra.global.size() ? (ra.global - rb.global).cwiseAbs().maxCoeff() : 0.0;
    const bool na = std::isnan(ra.test_accuracy);
    const bool nb = std::isnan(rb.test_accuracy);
    if (na && nb) {
      g.accuracy_gap = 0.0;
    } else if (na || nb) {
      g.accuracy_gap = std::numeric_limits<double>::infinity();
    } else {
      g.accuracy_gap = std::fabs(ra.test_accuracy - rb.test_accuracy);
    }
    if (std::isnan(g.param_gap)) g.param_gap = std::numeric_limits<double>::infinity();
    rep.max_param_gap = std::max(rep.max_param_gap, g.param_gap);
    rep.max_accuracy_gap = std::max(rep.max_accuracy_gap, g.accuracy_gap);
    rep.rounds.push_back(g);
  }
  rep.passed = rep.max_param_gap <= tol && rep.max_accuracy_gap <= tol;
  return rep;
}

std::string EquivalenceReport::to_text() const {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific;
  os << "round,param_gap,accuracy_gap\n";
  for (const auto& g : rounds) os << g.round << ',' << g.param_gap << ',' << g.accuracy_gap << '\n';
  os << "max_param_gap=" << max_param_gap << '\n'
     << "max_accuracy_gap=" << max_accuracy_gap << '\n'
     << "tol=" << tol << '\n'
     << "result=" << (passed ? "pass" : "fail") << '\n';
  return os.str();
}

}  // namespace sifl
