// Copyright 2026 The defectwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DEFECTWALK_VALIDATION_HPP
#define DEFECTWALK_VALIDATION_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace defectwalk {

enum class Relation {
  kWithin,   // |measured - target| <= tolerance
  kGreater,  // measured > target
};

struct CheckResult {
  int criterion = 0;
  std::string id;
  std::string description;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::kWithin;
  bool passed = false;
};

struct ValidationOptions {
  // Multiplies every kWithin tolerance; values < 1 tighten the suite.
  double tolerance_scale = 1.0;
  // Criteria to run (1..12); empty runs all.
  std::vector<int> only;
};

inline constexpr int kCriterionCount = 12;

// Title of a criterion, for reports.
std::string criterion_title(int criterion);

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

nlohmann::json validation_report(const std::vector<CheckResult>& results);

}  // namespace defectwalk

#endif  // DEFECTWALK_VALIDATION_HPP
