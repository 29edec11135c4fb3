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

#include "fdsched/sim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fdsched/power.hpp"
#include "fdsched/scheduling.hpp"

namespace fdsched {

namespace {

constexpr std::int64_t kBlockSize = 2048;

constexpr std::array kSchedulers = {Scheduler::A1,     Scheduler::A2,     Scheduler::A3,
                                    Scheduler::A1_OPA, Scheduler::A2_OPA, Scheduler::A3_OPA,
                                    Scheduler::ES_FD,  Scheduler::ES_FDHD, Scheduler::HD_TDD};

std::optional<BaseSelector> base_of(Scheduler s) {
  switch (s) {
    case Scheduler::A1:
    case Scheduler::A1_OPA:
      return BaseSelector::A1;
    case Scheduler::A2:
    case Scheduler::A2_OPA:
      return BaseSelector::A2;
    case Scheduler::A3:
    case Scheduler::A3_OPA:
      return BaseSelector::A3;
    default:
      return std::nullopt;
  }
}

bool uses_opa(Scheduler s) {
  return s == Scheduler::A1_OPA || s == Scheduler::A2_OPA || s == Scheduler::A3_OPA;
}

// Running mean/variance with Chan's pairwise merge, so per-block partials can
// be combined in a fixed order.
struct Moments {
  std::int64_t n = 0;
  double mean_sum = 0.0;
  double m2_sum = 0.0;
  double mean_ul = 0.0;
  double mean_dl = 0.0;
  std::int64_t fd = 0;

  void push(const TrialOutcome& o) {
    ++n;
    const double inv = 1.0 / static_cast<double>(n);
    const double d = o.rate.r_sum - mean_sum;
    mean_sum += d * inv;
    m2_sum += d * (o.rate.r_sum - mean_sum);
    mean_ul += (o.rate.r_ul - mean_ul) * inv;
    mean_dl += (o.rate.r_dl - mean_dl) * inv;
    if (o.mode == DuplexMode::FD) ++fd;
  }

  void merge(const Moments& b) {
    if (b.n == 0) return;
    if (n == 0) {
      *this = b;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(b.n);
    const double total = na + nb;
    const double d = b.mean_sum - mean_sum;
    mean_sum += d * nb / total;
    m2_sum += b.m2_sum + d * d * na * nb / total;
    mean_ul += (b.mean_ul - mean_ul) * nb / total;
    mean_dl += (b.mean_dl - mean_dl) * nb / total;
    n += b.n;
    fd += b.fd;
  }

  TrialStats stats() const {
    TrialStats s;
    s.n_trials = n;
    s.mean_sum_rate = mean_sum;
    s.mean_ul_rate = mean_ul;
    s.mean_dl_rate = mean_dl;
    s.std_error = n > 1 ? std::sqrt(m2_sum / static_cast<double>(n - 1) / static_cast<double>(n))
                        : 0.0;
    s.fd_fraction = n > 0 ? static_cast<double>(fd) / static_cast<double>(n) : 0.0;
    return s;
  }
};

struct BlockResult {
  std::vector<Moments> moments;
  std::int64_t violations = 0;
};

int resolve_workers(int requested, std::int64_t blocks) {
  int w = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  w = std::max(w, 1);
  return static_cast<int>(std::min<std::int64_t>(w, std::max<std::int64_t>(blocks, 1)));
}

// Runs block_fn(begin, end) over fixed-size trial blocks on a pool of
// workers and returns the block results in block order.
template <class BlockFn>
std::vector<BlockResult> run_blocks(std::int64_t n_trials, int workers, BlockFn block_fn) {
  const std::int64_t blocks = (n_trials + kBlockSize - 1) / kBlockSize;
  std::vector<BlockResult> results(static_cast<std::size_t>(blocks));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    try {
      for (std::int64_t b = next++; b < blocks; b = next++) {
        const std::int64_t begin = b * kBlockSize;
        const std::int64_t end = std::min(n_trials, begin + kBlockSize);
        results[static_cast<std::size_t>(b)] = block_fn(begin, end);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = blocks;
    }
  };

  const int n_workers = resolve_workers(workers, blocks);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

bool at_least(double lhs, double rhs) {
  return lhs + 1e-12 * std::max(1.0, std::abs(rhs)) >= rhs;
}

// Per-realization ordering checks among the evaluated schedulers.
std::int64_t count_violations(std::span<const Scheduler> schedulers,
                              std::span<const TrialOutcome> outcomes,
                              const ChannelRealization& ch, const SystemConfig& config) {
  std::optional<double> es_fdhd;
  std::optional<double> es_fd;
  for (std::size_t i = 0; i < schedulers.size(); ++i) {
    if (schedulers[i] == Scheduler::ES_FDHD) es_fdhd = outcomes[i].rate.r_sum;
    if (schedulers[i] == Scheduler::ES_FD) es_fd = outcomes[i].rate.r_sum;
  }
  bool ok = true;
  for (std::size_t i = 0; i < schedulers.size(); ++i) {
    const Scheduler s = schedulers[i];
    const double r = outcomes[i].rate.r_sum;
    if (es_fdhd) ok = ok && at_least(*es_fdhd, r);
    const auto base = base_of(s);
    if (!base) continue;
    if (es_fd && !uses_opa(s)) ok = ok && at_least(*es_fd, r);
    if (uses_opa(s)) {
      const Schedule pair = select(*base, ch, config);
      const double P0 = config.p0_max;
      const double PU = config.pu_max;
      ok = ok && at_least(r, pair_rates(ch, config, *pair.ul, *pair.dl, P0, PU).r_sum);
      ok = ok && at_least(r, pair_rates(ch, config, *pair.ul, *pair.dl, 0.0, PU).r_sum);
      ok = ok && at_least(r, pair_rates(ch, config, *pair.ul, *pair.dl, P0, 0.0).r_sum);
    }
  }
  return ok ? 0 : 1;
}

CoupledStats run_engine(const SystemConfig& config, std::span<const Scheduler> schedulers,
                        std::int64_t n_trials, std::uint64_t seed, const RunOptions& options,
                        bool check_dominance) {
  config.validate();
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  if (schedulers.empty()) throw std::invalid_argument("no scheduler requested");

  auto block_fn = [&](std::int64_t begin, std::int64_t end) {
    BlockResult out;
    out.moments.resize(schedulers.size());
    ChannelRealization ch;
    std::vector<TrialOutcome> outcomes(schedulers.size());
    for (std::int64_t t = begin; t < end; ++t) {
      RandomStream rng(seed, static_cast<std::uint64_t>(t));
      draw_realization_into(config, rng, ch);
      if (options.channel_hook) options.channel_hook(ch);
      for (std::size_t i = 0; i < schedulers.size(); ++i) {
        outcomes[i] = run_scheduler(schedulers[i], ch, config);
        out.moments[i].push(outcomes[i]);
      }
      if (check_dominance) out.violations += count_violations(schedulers, outcomes, ch, config);
    }
    return out;
  };

  const auto blocks = run_blocks(n_trials, options.workers, block_fn);
  std::vector<Moments> total(schedulers.size());
  CoupledStats result;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i].merge(b.moments[i]);
    result.dominance_violations += b.violations;
  }
  for (const auto& m : total) result.per_scheduler.push_back(m.stats());
  return result;
}

}  // namespace

std::string_view to_string(Scheduler s) {
  switch (s) {
    case Scheduler::A1:
      return "a1";
    case Scheduler::A2:
      return "a2";
    case Scheduler::A3:
      return "a3";
    case Scheduler::A1_OPA:
      return "a1-opa";
    case Scheduler::A2_OPA:
      return "a2-opa";
    case Scheduler::A3_OPA:
      return "a3-opa";
    case Scheduler::ES_FD:
      return "es-fd";
    case Scheduler::ES_FDHD:
      return "es-fdhd";
    case Scheduler::HD_TDD:
      return "hd-tdd";
  }
  return "?";
}

std::optional<Scheduler> parse_scheduler(std::string_view name) {
  for (Scheduler s : kSchedulers) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::span<const Scheduler> all_schedulers() { return kSchedulers; }

TrialOutcome run_scheduler(Scheduler s, const ChannelRealization& ch,
                           const SystemConfig& config) {
  if (s == Scheduler::HD_TDD) return {hd_tdd_rate(ch, config), std::nullopt};
  Schedule schedule;
  if (s == Scheduler::ES_FD) {
    schedule = select_es_fd(ch, config);
  } else if (s == Scheduler::ES_FDHD) {
    schedule = select_es_fdhd(ch, config);
  } else if (uses_opa(s)) {
    schedule = opa_enhanced_schedule(ch, config, *base_of(s));
  } else {
    schedule = select(*base_of(s), ch, config);
  }
  return {rates(ch, config, schedule), schedule.mode};
}

TrialStats run_trials(const SystemConfig& config, Scheduler scheduler, std::int64_t n_trials,
                      std::uint64_t seed, const RunOptions& options) {
  const std::array one{scheduler};
  return run_engine(config, one, n_trials, seed, options, false).per_scheduler.front();
}

CoupledStats run_coupled(const SystemConfig& config, std::span<const Scheduler> schedulers,
                         std::int64_t n_trials, std::uint64_t seed, const RunOptions& options) {
  return run_engine(config, schedulers, n_trials, seed, options, true);
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::P0Dbm:
      return "p0_dbm";
    case SweepParameter::SiCancellationDb:
      return "si_cancellation_db";
    case SweepParameter::KUsers:
      return "k_users";
  }
  return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (auto p : {SweepParameter::P0Dbm, SweepParameter::SiCancellationDb, SweepParameter::KUsers}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep values must be non-empty");
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  const bool up = values.size() < 2 || values[1] > values[0];
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
      throw std::invalid_argument("sweep values must be strictly monotone");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("sweep values must be finite");
    if (parameter == SweepParameter::KUsers && (v < 1.0 || v != std::floor(v))) {
      throw std::invalid_argument("k_users sweep values must be positive integers");
    }
  }
}

LinkBudget budget_at(const SweepSpec& spec, double value) {
  LinkBudget b = spec.base;
  switch (spec.parameter) {
    case SweepParameter::P0Dbm:
      b.p0_dbm = value;
      if (spec.pu_dbm_scale) b.pu_dbm = *spec.pu_dbm_scale * value;
      break;
    case SweepParameter::SiCancellationDb:
      b.si_cancellation_db = value;
      break;
    case SweepParameter::KUsers:
      b.k_u = b.k_d = static_cast<int>(value);
      break;
  }
  return b;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const RunOptions& options) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const SystemConfig config = config_from_db(budget_at(spec, spec.values[i]));
    rows.push_back({spec.values[i], spec.scheduler,
                    run_trials(config, spec.scheduler, spec.n_trials, derive_seed(spec.seed, i),
                               options)});
  }
  return rows;
}

}  // namespace fdsched
