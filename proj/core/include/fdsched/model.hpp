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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "fdsched/random.hpp"

namespace fdsched {

/// Linear-unit system parameters. Powers and noise variances in mW.
struct SystemConfig {
  double p0_max = 1.0;     // BS transmit power budget
  double pu_max = 1.0;     // UL MT transmit power budget
  double sigma0_sq = 1.0;  // noise at the BS receiver
  double sigmaD_sq = 1.0;  // noise at every DL MT
  double si_gain = 0.0;    // residual self-interference gain |h00|^2
  int k_u = 1;
  int k_d = 1;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Logarithmic-unit description of an operating point.
struct LinkBudget {
  double p0_dbm = 24.0;
  double pu_dbm = 23.0;
  double si_cancellation_db = 80.0;
  double noise_figure_bs_db = 13.0;
  double noise_figure_mt_db = 9.0;
  double bandwidth_hz = 1e7;
  int k_u = 5;
  int k_d = 5;
};

double dbm_to_mw(double dbm);
double db_to_linear(double db);

/// kTB noise power in mW for the given bandwidth and noise figure
/// (-174 dBm/Hz reference).
double thermal_noise_mw(double bandwidth_hz, double noise_figure_db);

SystemConfig config_from_db(const LinkBudget& budget);

/// One snapshot of all squared channel magnitudes.
struct ChannelRealization {
  std::vector<double> g_ul;  // |h_{0,u}|^2, size k_u
  std::vector<double> g_dl;  // |h_{d,0}|^2, size k_d
  std::vector<double> g_x;   // |h_{d,u}|^2, k_d x k_u row-major
  double si_gain = 0.0;

  std::size_t k_u() const { return g_ul.size(); }
  std::size_t k_d() const { return g_dl.size(); }
  double cross(std::size_t d, std::size_t u) const { return g_x[d * g_ul.size() + u]; }
  double& cross(std::size_t d, std::size_t u) { return g_x[d * g_ul.size() + u]; }

  /// Zero-filled realization of the right shape.
  static ChannelRealization zeros(std::size_t k_u, std::size_t k_d, double si_gain = 0.0);
};

/// Draws every gain i.i.d. Exp(1) (unit-power Rayleigh) in the order g_ul,
/// g_dl, g_x; the SI gain is copied from the config.
ChannelRealization draw_realization(const SystemConfig& config, RandomStream& rng);

/// Same as draw_realization but reuses the buffers of `out`.
void draw_realization_into(const SystemConfig& config, RandomStream& rng, ChannelRealization& out);

enum class DuplexMode { FD, HD_UL, HD_DL };

std::string_view to_string(DuplexMode mode);

/// Selected users and transmit powers for one slot.
struct Schedule {
  std::optional<std::size_t> ul;
  std::optional<std::size_t> dl;
  double p0 = 0.0;
  double pu = 0.0;
  DuplexMode mode = DuplexMode::FD;

  bool operator==(const Schedule&) const = default;
};

/// Throws std::invalid_argument if the schedule breaks a mode or power
/// invariant, std::out_of_range on a bad user index.
void validate_schedule(const Schedule& schedule, const SystemConfig& config,
                       const ChannelRealization& ch);

/// Instantaneous rates in bps/Hz.
struct RateBreakdown {
  double r_ul = 0.0;
  double r_dl = 0.0;
  double r_sum = 0.0;
};

/// SINR at the BS: pu g_ul[u] / (p0 si + sigma0^2).
double sinr_ul(const ChannelRealization& ch, std::size_t u, double p0, double pu, double sigma0_sq);

/// SINR at DL MT d: p0 g_dl[d] / (pu g_x[d][u] + sigmaD^2); no inter-MT
/// term when there is no UL transmitter (then pu must be 0).
double sinr_dl(const ChannelRealization& ch, std::size_t d, std::optional<std::size_t> u,
               double p0, double pu, double sigmaD_sq);

RateBreakdown rates(const ChannelRealization& ch, const SystemConfig& config,
                    const Schedule& schedule);

/// Rates of the pair (u, d) at arbitrary powers; a zero power silences its
/// link entirely.
RateBreakdown pair_rates(const ChannelRealization& ch, const SystemConfig& config, std::size_t u,
                         std::size_t d, double p0, double pu);

}  // namespace fdsched
