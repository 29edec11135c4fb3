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
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fdsched/model.hpp"

namespace fdsched {

enum class Scheduler { A1, A2, A3, A1_OPA, A2_OPA, A3_OPA, ES_FD, ES_FDHD, HD_TDD };

/// CLI spelling: "a1", "a2-opa", "es-fdhd", "hd-tdd", ...
std::string_view to_string(Scheduler s);
std::optional<Scheduler> parse_scheduler(std::string_view name);
std::span<const Scheduler> all_schedulers();

/// Rates of one scheduler on one realization. `mode` is empty for the TDD
/// benchmark, which has no single duplex mode.
struct TrialOutcome {
  RateBreakdown rate;
  std::optional<DuplexMode> mode;
};

TrialOutcome run_scheduler(Scheduler s, const ChannelRealization& ch, const SystemConfig& config);

struct TrialStats {
  double mean_sum_rate = 0.0;
  double mean_ul_rate = 0.0;
  double mean_dl_rate = 0.0;
  double std_error = 0.0;  // of the mean sum rate
  std::int64_t n_trials = 0;
  double fd_fraction = 0.0;  // share of trials whose final mode is FD

  bool operator==(const TrialStats&) const = default;
};

struct RunOptions {
  /// Worker threads; 0 means one per hardware thread. Results do not depend
  /// on this value.
  int workers = 0;
  /// Applied to every realization after it is drawn (test hook).
  std::function<void(ChannelRealization&)> channel_hook;
};

/// Monte Carlo over n_trials realizations; trial i draws from substream
/// (seed, i).
TrialStats run_trials(const SystemConfig& config, Scheduler scheduler, std::int64_t n_trials,
                      std::uint64_t seed, const RunOptions& options = {});

/// Several schedulers evaluated on the same realizations.
struct CoupledStats {
  std::vector<TrialStats> per_scheduler;  // in the order requested
  /// Trials breaking the per-realization ordering ES_FDHD >= ES_FD >= Ai,
  /// ES_FDHD >= every scheduler, Ai_OPA >= Ai and Ai_OPA >= both one-link
  /// corners of Ai's pair. Always checked among the schedulers requested.
  std::int64_t dominance_violations = 0;
};

CoupledStats run_coupled(const SystemConfig& config, std::span<const Scheduler> schedulers,
                         std::int64_t n_trials, std::uint64_t seed,
                         const RunOptions& options = {});

enum class SweepParameter { P0Dbm, SiCancellationDb, KUsers };

std::string_view to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::P0Dbm;
  std::vector<double> values;
  Scheduler scheduler = Scheduler::A1;
  LinkBudget base;
  /// When set and sweeping p0, pu_dbm = scale * p0_dbm (multiplication in the
  /// dBm domain).
  std::optional<double> pu_dbm_scale;
  std::int64_t n_trials = 100000;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// The operating point of sweep entry `value`.
LinkBudget budget_at(const SweepSpec& spec, double value);

struct SweepRow {
  double value = 0.0;
  Scheduler scheduler = Scheduler::A1;
  TrialStats stats;
};

/// One run_trials per value, seeded with derive_seed(spec.seed, index).
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const RunOptions& options = {});

}  // namespace fdsched
