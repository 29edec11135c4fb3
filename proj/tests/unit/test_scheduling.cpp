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

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fdsched/scheduling.hpp"

using namespace fdsched;

namespace {

ChannelRealization make(std::vector<double> g_ul, std::vector<double> g_dl, double si = 0.0) {
  auto ch = ChannelRealization::zeros(g_ul.size(), g_dl.size(), si);
  ch.g_ul = std::move(g_ul);
  ch.g_dl = std::move(g_dl);
  return ch;
}

SystemConfig random_config(RandomStream& rng, int k_u, int k_d) {
  return {0.1 + 10 * rng.uniform(), 0.1 + 10 * rng.uniform(), 0.01 + rng.uniform(),
          0.01 + rng.uniform(), rng.uniform(), k_u, k_d};
}

double sum_rate(const ChannelRealization& ch, const SystemConfig& c, const Schedule& s) {
  return rates(ch, c, s).r_sum;
}

}  // namespace

TEST_CASE("A1 picks the strongest links") {
  const SystemConfig c{1, 1, 1, 1, 0, 3, 2};
  const auto s = select_a1(make({0.5, 2.0, 1.0}, {3.0, 0.1}), c);
  CHECK(s.ul == 1u);
  CHECK(s.dl == 0u);
  CHECK(s.p0 == 1.0);
  CHECK(s.pu == 1.0);
  CHECK(s.mode == DuplexMode::FD);

  const auto one = select_a1(make({0.2}, {0.3}), SystemConfig{});
  CHECK(one.ul == 0u);
  CHECK(one.dl == 0u);

  // ties go to the lowest index
  const auto tie = select_a1(make({1.0, 1.0}, {2.0, 2.0, 2.0}), c);
  CHECK(tie.ul == 0u);
  CHECK(tie.dl == 0u);
}

TEST_CASE("selectors reject empty user sets and dead budgets") {
  SystemConfig c;
  CHECK_THROWS_AS(select_a1(make({}, {1.0}), c), std::invalid_argument);
  CHECK_THROWS_AS(select_a2(make({1.0}, {}), c), std::invalid_argument);
  CHECK_THROWS_AS(select_a3(make({}, {}), c), std::invalid_argument);
  CHECK_THROWS_AS(select_es_fd(make({}, {1.0}), c), std::invalid_argument);
  CHECK_THROWS_AS(select_es_fdhd(make({1.0}, {}), c), std::invalid_argument);
  CHECK_THROWS_AS(hd_tdd_rate(make({}, {}), c), std::invalid_argument);
  c.p0_max = 0.0;
  CHECK_THROWS_AS(select_a1(make({1.0}, {1.0}), c), std::invalid_argument);
}

TEST_CASE("A2 examples") {
  const SystemConfig c{1, 1, 1, 1, 0, 2, 2};
  auto ch = make({0.1, 3.0}, {1.0, 1.0});
  ch.cross(0, 1) = 0.0;
  ch.cross(1, 1) = 10.0;
  CHECK(select_a2(ch, c).dl == 0u);
  // interference only at DL 0, but from the unscheduled UL user
  auto clean = make({0.1, 3.0}, {0.5, 2.0});
  clean.cross(1, 0) = 100.0;
  CHECK(select_a2(clean, c).dl == select_a1(clean, c).dl);
}

TEST_CASE("A3 examples") {
  const SystemConfig c{1, 1, 1, 1, 0, 2, 2};
  auto ch = make({1.0, 1.0}, {0.2, 4.0});
  ch.cross(1, 0) = 10.0;
  CHECK(select_a3(ch, c).ul == 1u);
  auto clean = make({0.1, 3.0}, {0.5, 2.0});
  clean.cross(0, 1) = 100.0;
  CHECK(select_a3(clean, c).ul == select_a1(clean, c).ul);
}

TEST_CASE("selectors match exhaustive scans") {
  RandomStream rng(21, 0);
  for (int t = 0; t < 100; ++t) {
    const int k_u = 1 + t % 7, k_d = 1 + (t / 7) % 5;
    const auto c = random_config(rng, k_u, k_d);
    const auto ch = draw_realization(c, rng);

    std::size_t bu = 0, bd = 0;
    for (std::size_t u = 0; u < ch.k_u(); ++u) if (ch.g_ul[u] > ch.g_ul[bu]) bu = u;
    for (std::size_t d = 0; d < ch.k_d(); ++d) if (ch.g_dl[d] > ch.g_dl[bd]) bd = d;
    const auto a1 = select_a1(ch, c);
    CHECK(a1.ul == bu);
    CHECK(a1.dl == bd);

    std::size_t d2 = 0;
    double best = -1;
    for (std::size_t d = 0; d < ch.k_d(); ++d) {
      const double v = sinr_dl(ch, d, bu, c.p0_max, c.pu_max, c.sigmaD_sq);
      if (v > best) best = v, d2 = d;
    }
    const auto a2 = select_a2(ch, c);
    CHECK(a2.ul == bu);
    CHECK(a2.dl == d2);

    std::size_t u3 = 0;
    best = -1;
    for (std::size_t u = 0; u < ch.k_u(); ++u) {
      const double v = c.pu_max * ch.g_ul[u] / (c.pu_max * ch.cross(bd, u) + c.sigma0_sq);
      if (v > best) best = v, u3 = u;
    }
    const auto a3 = select_a3(ch, c);
    CHECK(a3.dl == bd);
    CHECK(a3.ul == u3);
    CHECK(select(BaseSelector::A3, ch, c) == a3);
  }
}

TEST_CASE("ES-FD equals an independent double loop") {
  RandomStream rng(22, 0);
  for (int t = 0; t < 50; ++t) {
    const auto c = random_config(rng, 5, 5);
    const auto ch = draw_realization(c, rng);
    double best = -1;
    std::size_t bu = 0, bd = 0;
    for (std::size_t u = 0; u < 5; ++u) {
      for (std::size_t d = 0; d < 5; ++d) {
        const double g0 = c.pu_max * ch.g_ul[u] / (c.p0_max * ch.si_gain + c.sigma0_sq);
        const double gd = c.p0_max * ch.g_dl[d] / (c.pu_max * ch.cross(d, u) + c.sigmaD_sq);
        const double r = std::log2(1 + g0) + std::log2(1 + gd);
        if (r > best) best = r, bu = u, bd = d;
      }
    }
    const auto s = select_es_fd(ch, c);
    CHECK(s.ul == bu);
    CHECK(s.dl == bd);
    CHECK(sum_rate(ch, c, s) == doctest::Approx(best).epsilon(1e-13));
  }
  const auto one = select_es_fd(make({0.3}, {0.4}), SystemConfig{});
  CHECK(one.ul == 0u);
  CHECK(one.dl == 0u);
}

TEST_CASE("ES-FDHD mode choice") {
  SystemConfig c{1, 1, 1, 1, 0, 3, 3};
  RandomStream rng(23, 0);
  for (int t = 0; t < 50; ++t) {
    auto ch = draw_realization(c, rng);
    ch.si_gain = 0.0;
    for (auto& g : ch.g_x) g = 0.0;
    CHECK(select_es_fdhd(ch, c).mode == DuplexMode::FD);
  }

  c.sigma0_sq = c.sigmaD_sq = 0.5;
  for (int t = 0; t < 50; ++t) {
    auto ch = draw_realization(c, rng);
    ch.si_gain = 1e12;
    for (auto& g : ch.g_x) g = 1e12;
    const auto s = select_es_fdhd(ch, c);
    CHECK(s.mode != DuplexMode::FD);
    const double ul = std::log2(1 + c.pu_max * ch.g_ul[strongest_ul(ch)] / c.sigma0_sq);
    const double dl = std::log2(1 + c.p0_max * ch.g_dl[strongest_dl(ch)] / c.sigmaD_sq);
    CHECK(s.mode == (ul >= dl ? DuplexMode::HD_UL : DuplexMode::HD_DL));
    CHECK(sum_rate(ch, c, s) == std::max(ul, dl));
  }

  // one-sided budgets leave a single feasible mode
  c.p0_max = 0.0;
  const auto ch = draw_realization(c, rng);
  CHECK(select_es_fdhd(ch, c).mode == DuplexMode::HD_UL);
}

TEST_CASE("HD-TDD benchmark rate") {
  SystemConfig c{1, 1, 1, 1, 0, 2, 2};
  auto ch = make({3.0, 1.0}, {0.5, 3.0}, 1e6);
  ch.cross(0, 0) = 1e6;
  auto r = hd_tdd_rate(ch, c);
  CHECK(r.r_sum == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.r_ul == doctest::Approx(1.0).epsilon(1e-15));

  c.p0_max = 0.0;
  r = hd_tdd_rate(ch, c);
  CHECK(r.r_dl == 0.0);
  CHECK(r.r_sum == doctest::Approx(1.0).epsilon(1e-15));

  RandomStream rng(24, 0);
  const auto rc = random_config(rng, 4, 6);
  const auto rch = draw_realization(rc, rng);
  double gu = 0, gd = 0;
  for (double g : rch.g_ul) gu = std::max(gu, g);
  for (double g : rch.g_dl) gd = std::max(gd, g);
  const double expect = 0.5 * std::log2(1 + rc.pu_max * gu / rc.sigma0_sq) +
                        0.5 * std::log2(1 + rc.p0_max * gd / rc.sigmaD_sq);
  CHECK(hd_tdd_rate(rch, rc).r_sum == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("selectors ignore the gains they are not supposed to read") {
  RandomStream rng(25, 0);
  for (int t = 0; t < 100; ++t) {
    const auto c = random_config(rng, 4, 5);
    const auto ch = draw_realization(c, rng);

    const auto a1 = select_a1(ch, c);
    auto ul_view = ch;
    for (auto& g : ul_view.g_dl) g = rng.exponential();
    for (auto& g : ul_view.g_x) g = rng.exponential();
    CHECK(select_a1(ul_view, c).ul == a1.ul);
    auto dl_view = ch;
    for (auto& g : dl_view.g_ul) g = rng.exponential();
    for (auto& g : dl_view.g_x) g = rng.exponential();
    CHECK(select_a1(dl_view, c).dl == a1.dl);

    const auto a2 = select_a2(ch, c);
    auto off_column = ch;
    for (std::size_t d = 0; d < 5; ++d)
      for (std::size_t u = 0; u < 4; ++u)
        if (u != *a2.ul) off_column.cross(d, u) = rng.exponential();
    CHECK(select_a2(off_column, c) == a2);

    const auto a3 = select_a3(ch, c);
    auto off_row = ch;
    for (std::size_t d = 0; d < 5; ++d)
      for (std::size_t u = 0; u < 4; ++u)
        if (d != *a3.dl) off_row.cross(d, u) = rng.exponential();
    CHECK(select_a3(off_row, c) == a3);
  }
}

TEST_CASE("per-realization dominance chain") {
  RandomStream rng(26, 0);
  for (int t = 0; t < 1000; ++t) {
    const auto c = random_config(rng, 1 + t % 6, 1 + t % 4);
    const auto ch = draw_realization(c, rng);
    const double fdhd = sum_rate(ch, c, select_es_fdhd(ch, c));
    const double fd = sum_rate(ch, c, select_es_fd(ch, c));
    CHECK(fdhd >= fd);
    for (auto base : {BaseSelector::A1, BaseSelector::A2, BaseSelector::A3}) {
      CHECK(fd >= sum_rate(ch, c, select(base, ch, c)));
    }
  }
}

TEST_CASE("A1 is invariant to scaling one side") {
  RandomStream rng(27, 0);
  const SystemConfig c{1, 1, 1, 1, 0, 6, 6};
  for (int t = 0; t < 100; ++t) {
    const auto ch = draw_realization(c, rng);
    const auto s = select_a1(ch, c);
    const double scale = std::exp(10 * (rng.uniform() - 0.5));
    auto a = ch, b = ch;
    for (auto& g : a.g_dl) g *= scale;
    for (auto& g : b.g_ul) g *= scale;
    CHECK(select_a1(a, c).dl == s.dl);
    CHECK(select_a1(b, c).ul == s.ul);
  }
}
