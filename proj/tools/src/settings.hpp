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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fdsched/sim.hpp"

namespace fdsched::cli {

using Json = nlohmann::json;

/// Bad user input, attributed to one command-line flag.
class FlagError : public std::runtime_error {
 public:
  FlagError(std::string flag, const std::string& message)
      : std::runtime_error(flag + ": " + message), flag_(std::move(flag)) {}
  const std::string& flag() const { return flag_; }

 private:
  std::string flag_;
};

enum class OutputFormat { Csv, Json };

struct SimulateSettings {
  std::optional<std::string> preset;
  SweepParameter sweep = SweepParameter::P0Dbm;
  std::vector<double> values;
  std::vector<Scheduler> schedulers;
  LinkBudget base;
  std::optional<double> pu_dbm_scale;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  bool coupled = false;
  OutputFormat format = OutputFormat::Csv;
};

enum class AnalyzeTarget { A1, A2, Ul };

struct AnalyzeSettings {
  AnalyzeTarget target = AnalyzeTarget::A1;
  bool asymptotic = false;
  LinkBudget base;
  OutputFormat format = OutputFormat::Csv;
};

// Settings travel as flat JSON objects keyed like the flags ("p0_dbm" for
// --p0-dbm). Layers are merged key by key, later layers winning.

Json simulate_defaults();
Json analyze_defaults();

/// Keys implied by a figure preset. Throws FlagError("--preset").
Json preset_layer(const std::string& name);

/// Reads a config file: either a flat key-value object or a run manifest,
/// in which case its "config" member is used.
Json load_config_file(const std::string& path);

/// defaults < preset < config file < flags.
Json merge_layers(const Json& defaults, const Json& file, const Json& flags);

SimulateSettings parse_simulate(const Json& resolved);
AnalyzeSettings parse_analyze(const Json& resolved);

/// Full description of a finished run; feeding "config" back through
/// --config reproduces the output.
Json make_manifest(const std::string& command, const Json& resolved, std::uint64_t seed);

}  // namespace fdsched::cli
