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

#include "fdsched/power.hpp"

#include <stdexcept>

namespace fdsched {

double zeta(double p0, double g_ul_star, double g_x_star, double sigma0_sq, double sigmaD_sq,
            double si_gain) {
  return g_ul_star * sigmaD_sq / (p0 * si_gain + sigma0_sq) - g_x_star;
}

double eta(double pu, double g_dl_star, double g_x_star, double sigma0_sq, double sigmaD_sq,
           double si_gain) {
  return g_dl_star * sigma0_sq / (pu * g_x_star + sigmaD_sq) - si_gain;
}

namespace {

void check_pair(const ChannelRealization& ch, std::size_t ul, std::size_t dl,
                const SystemConfig& config) {
  if (ul >= ch.k_u()) throw std::out_of_range("opa: UL index out of range");
  if (dl >= ch.k_d()) throw std::out_of_range("opa: DL index out of range");
  if (!(config.p0_max > 0.0 && config.pu_max > 0.0)) {
    throw std::invalid_argument("opa needs p0_max > 0 and pu_max > 0");
  }
}

}  // namespace

OpaDecision opa_by_enumeration(const ChannelRealization& ch, std::size_t ul, std::size_t dl,
                               const SystemConfig& config) {
  check_pair(ch, ul, dl, config);
  const double P0 = config.p0_max;
  const double PU = config.pu_max;
  const double fd = pair_rates(ch, config, ul, dl, P0, PU).r_sum;
  const double ul_only = pair_rates(ch, config, ul, dl, 0.0, PU).r_sum;
  const double dl_only = pair_rates(ch, config, ul, dl, P0, 0.0).r_sum;

  OpaDecision best{P0, PU, DuplexMode::FD, false};
  double best_rate = fd;
  if (ul_only > best_rate) {
    best = {0.0, PU, DuplexMode::HD_UL, false};
    best_rate = ul_only;
  }
  if (dl_only > best_rate) best = {P0, 0.0, DuplexMode::HD_DL, false};
  return best;
}

OpaDecision opa(const ChannelRealization& ch, std::size_t ul, std::size_t dl,
                const SystemConfig& config) {
  check_pair(ch, ul, dl, config);
  const double g_x = ch.cross(dl, ul);
  const double z = zeta(config.p0_max, ch.g_ul[ul], g_x, config.sigma0_sq, config.sigmaD_sq,
                        ch.si_gain);
  const double e = eta(config.pu_max, ch.g_dl[dl], g_x, config.sigma0_sq, config.sigmaD_sq,
                       ch.si_gain);
  if (z >= 0.0 && e >= 0.0) return {config.p0_max, config.pu_max, DuplexMode::FD, true};
  return opa_by_enumeration(ch, ul, dl, config);
}

Schedule opa_enhanced_schedule(const ChannelRealization& ch, const SystemConfig& config,
                               BaseSelector base) {
  Schedule s = select(base, ch, config);
  const OpaDecision decision = opa(ch, *s.ul, *s.dl, config);
  switch (decision.mode) {
    case DuplexMode::FD:
      return s;
    case DuplexMode::HD_UL:
      return {.ul = strongest_ul(ch), .dl = std::nullopt, .p0 = 0.0, .pu = config.pu_max, .mode = DuplexMode::HD_UL};
    case DuplexMode::HD_DL:
      return {.ul = std::nullopt, .dl = strongest_dl(ch), .p0 = config.p0_max, .pu = 0.0, .mode = DuplexMode::HD_DL};
  }
  return s;
}

}  // namespace fdsched
