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
#include <numbers>

#include "fdsched/quadrature.hpp"

using namespace fdsched;

TEST_CASE("half-line integrals with known values") {
  auto r = integrate_half_line([](double x) { return std::exp(-x); }, 1e-12);
  CHECK(std::abs(r.value - 1.0) < 1e-12);
  CHECK(r.error_bound <= 1e-12);

  r = integrate_half_line([](double x) { return 1.0 / (1.0 + x * x) / (1.0 + x); }, 1e-10);
  CHECK(std::abs(r.value - std::numbers::pi / 4) < 1e-10);

  r = integrate_half_line([](double x) { return x * x * std::exp(-x / 3); }, 1e-9);
  CHECK(std::abs(r.value - 54.0) < 1e-9);

  // log(1+x) e^-x integrates to e E1(1)
  r = integrate_half_line([](double x) { return std::log1p(x) * std::exp(-x); }, 1e-12);
  CHECK(std::abs(r.value - 0.596347362323194074341) < 1e-12);
}

TEST_CASE("finite-interval integrals") {
  auto r = integrate_interval([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
  r = integrate_interval([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-6);
  CHECK(std::abs(r.value - 2.0 / 3) < 1e-6);
}

TEST_CASE("non-convergence is reported with the achieved bound") {
  bool thrown = false;
  try {
    integrate_half_line([](double x) { return 1.0 / (1.0 + x); }, 1e-6);
  } catch (const QuadratureError& e) {
    thrown = true;
    CHECK(e.achieved().value > 1.0);
  }
  CHECK(thrown);
  CHECK_THROWS_AS(integrate_half_line([](double) { return std::nan(""); }, 1e-6),
                  QuadratureError);
}
