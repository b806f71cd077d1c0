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

#ifndef SIFL_HARNESS_EQUIVALENCE_HPP_
#define SIFL_HARNESS_EQUIVALENCE_HPP_

#include <string>
#include <vector>

#include "sifl/fl/training.hpp"

namespace sifl {

struct RoundGap {
  Index round = 0;
  double param_gap = 0;     // max-abs over parameters
  double accuracy_gap = 0;  // 0 when both accuracies are undefined
};

struct EquivalenceReport {
  double tol = 0;
  std::vector<RoundGap> rounds;
  double max_param_gap = 0;
  double max_accuracy_gap = 0;
  bool passed = false;  // every gap <= tol

  std::string to_text() const;
};

// Throws ShapeMismatch unless both traces have the same rounds and n.
EquivalenceReport equivalence_report(const TrainingTrace& a, const TrainingTrace& b, double tol);

}  // namespace sifl

#endif  // SIFL_HARNESS_EQUIVALENCE_HPP_
