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

#include <functional>

#include "fdsched/model.hpp"
#include "fdsched/quadrature.hpp"

/// Average sum rates over Rayleigh fading at a fixed FD operating point:
/// closed forms, the SINR distributions they are built from, and the
/// generic rate integral used to check them.
namespace fdsched::analysis {

struct AnalyticalParams {
  double p0 = 1.0;
  double pu = 1.0;
  double sigma0_sq = 1.0;
  double sigmaD_sq = 1.0;
  double si_gain = 0.0;
  int k_u = 1;
  int k_d = 1;

  /// Both links active: p0, pu > 0. Throws std::invalid_argument.
  void validate() const;

  static AnalyticalParams from_config(const SystemConfig& config);
};

/// CDF of the UL SINR when the strongest of K_U users is scheduled.
double cdf_sinr_ul(double x, const AnalyticalParams& p);

/// CDF of the DL SINR under RSS DL selection (inter-MT gain independent of
/// the selected DL user's own gain).
double cdf_sinr_dl_a1(double x, const AnalyticalParams& p);

/// CDF of the DL SINR under max-SINR DL selection.
double cdf_sinr_dl_a2(double x, const AnalyticalParams& p);

using Cdf = std::function<double(double)>;

/// (1/ln 2) int_0^inf (2 - F_ul(x) - F_dl(x)) / (x + 1) dx, in bps/Hz, to
/// absolute tolerance `tol`. Throws QuadratureError on non-convergence.
double avg_rate_integral(const Cdf& cdf_ul, const Cdf& cdf_dl, double tol = 1e-9);

/// Closed-form rate with the bookkeeping needed to trust it.
struct ClosedFormValue {
  double value = 0.0;
  /// The operating point sat on a removable singularity of the closed form
  /// and pu was nudged by +1e-6 relative in the DL term.
  bool flagged = false;
  /// Decimal digits of the working precision that was needed.
  int digits = 0;
};

/// Average UL rate of max-gain UL selection.
ClosedFormValue avg_rate_ul_closed(const AnalyticalParams& p);

/// Average sum rate with RSS-UL / RSS-DL scheduling.
ClosedFormValue avg_rate_a1(const AnalyticalParams& p);

/// Average sum rate with RSS-UL / SINR-DL scheduling.
ClosedFormValue avg_rate_a2(const AnalyticalParams& p);

struct AsymptoticRate {
  double nats = 0.0;
  double bits = 0.0;
};

/// Large-K growth law log(log K_D log K_U) + log(pu / (p0 si + sigma0^2)).
/// Needs K_U, K_D >= 2.
AsymptoticRate asymptotic_rate_a1(const AnalyticalParams& p);

}  // namespace fdsched::analysis
