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

#include "fdsched/scheduling.hpp"

#include <cmath>
#include <span>
#include <stdexcept>

namespace fdsched {

namespace {

void require_users(const ChannelRealization& ch) {
  if (ch.k_u() == 0 || ch.k_d() == 0) throw std::invalid_argument("empty user set");
  if (ch.g_x.size() != ch.k_u() * ch.k_d()) {
    throw std::invalid_argument("cross-gain matrix does not match user counts");
  }
}

void require_fd_powers(const SystemConfig& config) {
  if (!(config.p0_max > 0.0 && config.pu_max > 0.0)) {
    throw std::invalid_argument("FD scheduling needs p0_max > 0 and pu_max > 0");
  }
}

// First index attaining the maximum of metric(i), i in [0, n).
template <class Metric>
std::size_t first_argmax(std::size_t n, Metric metric) {
  std::size_t best = 0;
  double best_value = metric(0);
  for (std::size_t i = 1; i < n; ++i) {
    const double v = metric(i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

std::size_t argmax(std::span<const double> values) {
  return first_argmax(values.size(), [&](std::size_t i) { return values[i]; });
}

Schedule full_power_fd(std::size_t u, std::size_t d, const SystemConfig& config) {
  return {.ul = u, .dl = d, .p0 = config.p0_max, .pu = config.pu_max, .mode = DuplexMode::FD};
}

}  // namespace

std::size_t strongest_ul(const ChannelRealization& ch) {
  require_users(ch);
  return argmax(ch.g_ul);
}

std::size_t strongest_dl(const ChannelRealization& ch) {
  require_users(ch);
  return argmax(ch.g_dl);
}

Schedule select_a1(const ChannelRealization& ch, const SystemConfig& config) {
  require_fd_powers(config);
  return full_power_fd(strongest_ul(ch), strongest_dl(ch), config);
}

Schedule select_a2(const ChannelRealization& ch, const SystemConfig& config) {
  require_fd_powers(config);
  const std::size_t u = strongest_ul(ch);
  const std::size_t d = first_argmax(ch.k_d(), [&](std::size_t k) {
    return config.p0_max * ch.g_dl[k] / (config.pu_max * ch.cross(k, u) + config.sigmaD_sq);
  });
  return full_power_fd(u, d, config);
}

Schedule select_a3(const ChannelRealization& ch, const SystemConfig& config) {
  require_fd_powers(config);
  const std::size_t d = strongest_dl(ch);
  const std::size_t u = first_argmax(ch.k_u(), [&](std::size_t k) {
    return config.pu_max * ch.g_ul[k] / (config.pu_max * ch.cross(d, k) + config.sigma0_sq);
  });
  return full_power_fd(u, d, config);
}

Schedule select(BaseSelector base, const ChannelRealization& ch, const SystemConfig& config) {
  switch (base) {
    case BaseSelector::A1:
      return select_a1(ch, config);
    case BaseSelector::A2:
      return select_a2(ch, config);
    case BaseSelector::A3:
      return select_a3(ch, config);
  }
  throw std::invalid_argument("unknown base selector");
}

Schedule select_es_fd(const ChannelRealization& ch, const SystemConfig& config) {
  require_users(ch);
  require_fd_powers(config);
  std::size_t best_u = 0;
  std::size_t best_d = 0;
  double best = -1.0;
  for (std::size_t u = 0; u < ch.k_u(); ++u) {
    for (std::size_t d = 0; d < ch.k_d(); ++d) {
      const double r = pair_rates(ch, config, u, d, config.p0_max, config.pu_max).r_sum;
      if (r > best) {
        best = r;
        best_u = u;
        best_d = d;
      }
    }
  }
  return full_power_fd(best_u, best_d, config);
}

Schedule select_es_fdhd(const ChannelRealization& ch, const SystemConfig& config) {
  require_users(ch);
  std::optional<Schedule> best;
  double best_rate = 0.0;
  auto consider = [&](const Schedule& s) {
    const double r = rates(ch, config, s).r_sum;
    if (!best || r > best_rate) {
      best = s;
      best_rate = r;
    }
  };
  if (config.p0_max > 0.0 && config.pu_max > 0.0) consider(select_es_fd(ch, config));
  if (config.pu_max > 0.0) {
    consider({.ul = strongest_ul(ch), .dl = std::nullopt, .p0 = 0.0, .pu = config.pu_max, .mode = DuplexMode::HD_UL});
  }
  if (config.p0_max > 0.0) {
    consider({.ul = std::nullopt, .dl = strongest_dl(ch), .p0 = config.p0_max, .pu = 0.0, .mode = DuplexMode::HD_DL});
  }
  return *best;
}

RateBreakdown hd_tdd_rate(const ChannelRealization& ch, const SystemConfig& config) {
  require_users(ch);
  const double best_ul = ch.g_ul[strongest_ul(ch)];
  const double best_dl = ch.g_dl[strongest_dl(ch)];
  RateBreakdown r;
  r.r_ul = 0.5 * std::log2(1.0 + config.pu_max * best_ul / config.sigma0_sq);
  r.r_dl = 0.5 * std::log2(1.0 + config.p0_max * best_dl / config.sigmaD_sq);
  r.r_sum = r.r_ul + r.r_dl;
  return r;
}

}  // namespace fdsched
