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
#include <random>
#include <set>

#include "fdsched/random.hpp"

using fdsched::Philox4x32;
using fdsched::RandomStream;

static_assert(std::uniform_random_bit_generator<Philox4x32>);

TEST_CASE("Philox4x32-10 known answers") {
  // Random123 kat_vectors
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                          K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                          K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("engine output is the block sequence of (seed, stream)") {
  Philox4x32 eng(0, 0);
  CHECK(eng() == 0x6627e8d5u);
  CHECK(eng() == 0xe169c58du);
  CHECK(eng() == 0xbc57ac4cu);
  CHECK(eng() == 0x9b00dbd8u);
  const auto next = Philox4x32::block({1, 0, 0, 0}, {0, 0});
  CHECK(eng() == next[0]);
}

TEST_CASE("substreams are reproducible and distinct") {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    same_c += x == c.uniform();
    same_d += x == d.uniform();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("uniform variates live in the open unit interval with the right moments") {
  RandomStream rng(1, 0);
  const int n = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.002));
  CHECK(sum_sq / n - mean * mean == doctest::Approx(1.0 / 12.0).epsilon(0.005));
}

TEST_CASE("exponential variates have unit mean and variance") {
  RandomStream rng(2, 0);
  const int n = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = rng.exponential();
    REQUIRE(e > 0.0);
    REQUIRE(std::isfinite(e));
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 1.0) < 0.01);
  CHECK(std::abs(sum_sq / n - mean * mean - 1.0) < 0.02);
}

TEST_CASE("derived seeds are deterministic and spread out") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    CHECK(fdsched::derive_seed(5, i) == fdsched::derive_seed(5, i));
    seen.insert(fdsched::derive_seed(5, i));
  }
  CHECK(seen.size() == 10000);
  CHECK(fdsched::derive_seed(5, 0) != fdsched::derive_seed(6, 0));
}

TEST_CASE("engine plugs into standard distributions") {
  Philox4x32 eng(9, 1);
  std::uniform_int_distribution<int> die(1, 6);
  int counts[7] = {};
  for (int i = 0; i < 60000; ++i) ++counts[die(eng)];
  for (int face = 1; face <= 6; ++face) CHECK(std::abs(counts[face] - 10000) < 400);
}
