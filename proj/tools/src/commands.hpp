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

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "settings.hpp"
#include "table.hpp"

namespace fdsched::cli {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitNumerical = 3 };

struct SimulateResult {
  Table table;
  std::int64_t dominance_violations = 0;
};

/// One row per (sweep value, scheduler), value-major. Every scheduler at
/// sweep index i uses seed derive_seed(seed, i), so schedulers are compared
/// on common realizations.
SimulateResult simulate(const SimulateSettings& settings);

/// Closed form next to the quadrature of the CDF integral.
Table analyze(const AnalyzeSettings& settings);

/// The whole command line, argv[0] included. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdsched::cli
