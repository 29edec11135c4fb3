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

#include "fdsched/model.hpp"
#include "fdsched/scheduling.hpp"

namespace fdsched {

/// zeta(p0) = g_ul* sigmaD^2 / (p0 si + sigma0^2) - g_x*.
/// Non-negative at P0 means the scheduled UL link tolerates the SI that full
/// BS power creates.
double zeta(double p0, double g_ul_star, double g_x_star, double sigma0_sq, double sigmaD_sq,
            double si_gain);

/// eta(pu) = g_dl* sigma0^2 / (pu g_x* + sigmaD^2) - si.
double eta(double pu, double g_dl_star, double g_x_star, double sigma0_sq, double sigmaD_sq,
           double si_gain);

/// Result of the binary power allocation for one scheduled pair.
struct OpaDecision {
  double p0_star = 0.0;
  double pu_star = 0.0;
  DuplexMode mode = DuplexMode::FD;
  bool fast_path = false;  // decided by the zeta/eta test alone
};

/// Sum-rate optimal powers for the pair (ul, dl). The optimum always sits on
/// a corner of [0,P0] x [0,PU]: if zeta(P0) >= 0 and eta(PU) >= 0 it is
/// (P0, PU); otherwise the best of (P0,PU), (0,PU), (P0,0) is taken, with
/// ties going to FD, then HD_UL, then HD_DL.
OpaDecision opa(const ChannelRealization& ch, std::size_t ul, std::size_t dl,
                const SystemConfig& config);

/// Same decision by corner enumeration only (no fast path).
OpaDecision opa_by_enumeration(const ChannelRealization& ch, std::size_t ul, std::size_t dl,
                               const SystemConfig& config);

/// Runs `base` at full power, then switches to the OPA mode. A UL-only
/// outcome re-picks the strongest UL user and a DL-only outcome re-picks the
/// strongest DL user, since the other link no longer interferes.
Schedule opa_enhanced_schedule(const ChannelRealization& ch, const SystemConfig& config,
                               BaseSelector base);

}  // namespace fdsched
