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

namespace fdsched {

enum class BaseSelector { A1, A2, A3 };

/// RSS-UL / RSS-DL: strongest UL gain and strongest DL gain, chosen
/// independently. FD at (P0, PU).
Schedule select_a1(const ChannelRealization& ch, const SystemConfig& config);

/// RSS-UL then SINR-DL: u* as in select_a1, then the DL user with the best
/// SINR given u*'s inter-MT interference at maximum powers.
Schedule select_a2(const ChannelRealization& ch, const SystemConfig& config);

/// RSS-DL then SLNR-UL: d* as in select_a1, then the UL user maximizing
/// PU g_ul[u] / (PU g_x[d*][u] + sigma0^2).
Schedule select_a3(const ChannelRealization& ch, const SystemConfig& config);

Schedule select(BaseSelector base, const ChannelRealization& ch, const SystemConfig& config);

/// Best FD pair over all K_U x K_D pairs at (P0, PU).
Schedule select_es_fd(const ChannelRealization& ch, const SystemConfig& config);

/// Best of: the select_es_fd pair, the strongest UL user alone at PU, the
/// strongest DL user alone at P0. Ties resolve FD, then HD_UL, then HD_DL.
Schedule select_es_fdhd(const ChannelRealization& ch, const SystemConfig& config);

/// Half-duplex TDD benchmark: the strongest UL and strongest DL user each
/// get half of the slot at full power, free of SI and inter-MT interference.
RateBreakdown hd_tdd_rate(const ChannelRealization& ch, const SystemConfig& config);

/// Index of the first maximum of g_ul / g_dl.
std::size_t strongest_ul(const ChannelRealization& ch);
std::size_t strongest_dl(const ChannelRealization& ch);

}  // namespace fdsched
