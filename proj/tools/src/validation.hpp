// Copyright 2026 The fdsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fdsched::cli {

struct ValidationOptions {
  bool quick = false;  // smaller samples, same tolerances
  int workers = 0;
  bool inject_xi_fault = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

CriterionResult check_xi_kernel(const ValidationOptions& options);
CriterionResult check_a1_triangle(const ValidationOptions& options);
CriterionResult check_a2_triangle(const ValidationOptions& options);
CriterionResult check_binary_opa(const ValidationOptions& options);
CriterionResult check_dominance(const ValidationOptions& options);
CriterionResult check_cdf_laws(const ValidationOptions& options);
CriterionResult check_trends(const ValidationOptions& options);
CriterionResult check_asymptotic_trend(const ValidationOptions& options);
CriterionResult check_determinism(const ValidationOptions& options);

/// All nine checks in order. Progress lines go to `log` when given.
std::vector<CriterionResult> run_validation(const ValidationOptions& options, std::ostream* log);

/// One "PASS"/"FAIL" line per criterion.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace fdsched::cli
