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

#include "fdsched/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdsched {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_index(std::size_t i, std::size_t n, const char* what) {
  if (i >= n) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(i) +
                            " out of range (size " + std::to_string(n) + ")");
  }
}

bool nonneg_finite(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void SystemConfig::validate() const {
  require(nonneg_finite(p0_max), "p0_max must be finite and >= 0");
  require(nonneg_finite(pu_max), "pu_max must be finite and >= 0");
  require(p0_max > 0.0 || pu_max > 0.0, "at least one of p0_max, pu_max must be > 0");
  require(std::isfinite(sigma0_sq) && sigma0_sq > 0.0, "sigma0_sq must be finite and > 0");
  require(std::isfinite(sigmaD_sq) && sigmaD_sq > 0.0, "sigmaD_sq must be finite and > 0");
  require(nonneg_finite(si_gain), "si_gain must be finite and >= 0");
  require(k_u >= 1, "k_u must be >= 1");
  require(k_d >= 1, "k_d must be >= 1");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double thermal_noise_mw(double bandwidth_hz, double noise_figure_db) {
  if (!std::isfinite(bandwidth_hz) || bandwidth_hz <= 0.0) {
    throw std::invalid_argument("bandwidth_hz must be finite and > 0");
  }
  return dbm_to_mw(-174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
}

SystemConfig config_from_db(const LinkBudget& b) {
  require(std::isfinite(b.p0_dbm) && std::isfinite(b.pu_dbm), "powers in dBm must be finite");
  require(std::isfinite(b.si_cancellation_db) && b.si_cancellation_db >= 0.0,
          "si_cancellation_db must be finite and >= 0");
  require(std::isfinite(b.noise_figure_bs_db) && std::isfinite(b.noise_figure_mt_db),
          "noise figures must be finite");
  SystemConfig c;
  c.p0_max = dbm_to_mw(b.p0_dbm);
  c.pu_max = dbm_to_mw(b.pu_dbm);
  c.sigma0_sq = thermal_noise_mw(b.bandwidth_hz, b.noise_figure_bs_db);
  c.sigmaD_sq = thermal_noise_mw(b.bandwidth_hz, b.noise_figure_mt_db);
  c.si_gain = db_to_linear(-b.si_cancellation_db);
  c.k_u = b.k_u;
  c.k_d = b.k_d;
  c.validate();
  return c;
}

ChannelRealization ChannelRealization::zeros(std::size_t k_u, std::size_t k_d, double si_gain) {
  ChannelRealization ch;
  ch.g_ul.assign(k_u, 0.0);
  ch.g_dl.assign(k_d, 0.0);
  ch.g_x.assign(k_u * k_d, 0.0);
  ch.si_gain = si_gain;
  return ch;
}

void draw_realization_into(const SystemConfig& config, RandomStream& rng,
                           ChannelRealization& out) {
  const auto k_u = static_cast<std::size_t>(config.k_u);
  const auto k_d = static_cast<std::size_t>(config.k_d);
  out.g_ul.resize(k_u);
  out.g_dl.resize(k_d);
  out.g_x.resize(k_u * k_d);
  for (double& g : out.g_ul) g = rng.exponential();
  for (double& g : out.g_dl) g = rng.exponential();
  for (double& g : out.g_x) g = rng.exponential();
  out.si_gain = config.si_gain;
}

ChannelRealization draw_realization(const SystemConfig& config, RandomStream& rng) {
  ChannelRealization ch;
  draw_realization_into(config, rng, ch);
  return ch;
}

std::string_view to_string(DuplexMode mode) {
  switch (mode) {
    case DuplexMode::FD:
      return "FD";
    case DuplexMode::HD_UL:
      return "HD_UL";
    case DuplexMode::HD_DL:
      return "HD_DL";
  }
  return "?";
}

void validate_schedule(const Schedule& s, const SystemConfig& config,
                       const ChannelRealization& ch) {
  if (s.ul) check_index(*s.ul, ch.k_u(), "UL");
  if (s.dl) check_index(*s.dl, ch.k_d(), "DL");
  require(s.p0 >= 0.0 && s.p0 <= config.p0_max, "schedule p0 outside [0, p0_max]");
  require(s.pu >= 0.0 && s.pu <= config.pu_max, "schedule pu outside [0, pu_max]");
  switch (s.mode) {
    case DuplexMode::FD:
      require(s.ul && s.dl && s.p0 > 0.0 && s.pu > 0.0,
              "FD schedule needs both users and positive powers");
      break;
    case DuplexMode::HD_UL:
      require(s.ul && s.p0 == 0.0, "HD_UL schedule needs an UL user and p0 = 0");
      break;
    case DuplexMode::HD_DL:
      require(s.dl && s.pu == 0.0, "HD_DL schedule needs a DL user and pu = 0");
      break;
  }
}

double sinr_ul(const ChannelRealization& ch, std::size_t u, double p0, double pu,
               double sigma0_sq) {
  check_index(u, ch.k_u(), "UL");
  return pu * ch.g_ul[u] / (p0 * ch.si_gain + sigma0_sq);
}

double sinr_dl(const ChannelRealization& ch, std::size_t d, std::optional<std::size_t> u,
               double p0, double pu, double sigmaD_sq) {
  check_index(d, ch.k_d(), "DL");
  if (!u) {
    require(pu == 0.0, "sinr_dl: no UL user scheduled but pu > 0");
    return p0 * ch.g_dl[d] / sigmaD_sq;
  }
  check_index(*u, ch.k_u(), "UL");
  return p0 * ch.g_dl[d] / (pu * ch.cross(d, *u) + sigmaD_sq);
}

RateBreakdown rates(const ChannelRealization& ch, const SystemConfig& config,
                    const Schedule& s) {
  require(s.p0 >= 0.0 && s.p0 <= config.p0_max, "schedule p0 outside [0, p0_max]");
  require(s.pu >= 0.0 && s.pu <= config.pu_max, "schedule pu outside [0, pu_max]");
  RateBreakdown r;
  if (s.ul && s.pu > 0.0) {
    r.r_ul = std::log2(1.0 + sinr_ul(ch, *s.ul, s.p0, s.pu, config.sigma0_sq));
  }
  if (s.dl && s.p0 > 0.0) {
    const auto interferer = s.pu > 0.0 ? s.ul : std::nullopt;
    r.r_dl = std::log2(1.0 + sinr_dl(ch, *s.dl, interferer, s.p0, s.pu, config.sigmaD_sq));
  }
  r.r_sum = r.r_ul + r.r_dl;
  return r;
}

RateBreakdown pair_rates(const ChannelRealization& ch, const SystemConfig& config, std::size_t u,
                         std::size_t d, double p0, double pu) {
  RateBreakdown r;
  if (pu > 0.0) r.r_ul = std::log2(1.0 + sinr_ul(ch, u, p0, pu, config.sigma0_sq));
  if (p0 > 0.0) r.r_dl = std::log2(1.0 + sinr_dl(ch, d, u, p0, pu, config.sigmaD_sq));
  r.r_sum = r.r_ul + r.r_dl;
  return r;
}

}  // namespace fdsched
