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
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "fdsched/specfun.hpp"

using namespace fdsched::specfun;

namespace {

using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<400>,
                                          boost::multiprecision::et_off>;

// Ei(t) = gamma + ln|t| + sum_k t^k / (k k!), summed at 400 digits.
double ei_series(double t) {
  const Big x(t);
  Big term = 1;
  Big sum = 0;
  for (int k = 1; k < 5000; ++k) {
    term *= x / k;
    const Big add = term / k;
    sum += add;
    // the final sum cancels down to ~e^t, so stop on an absolute threshold
    if (k > abs(x) && abs(add) < Big("1e-250")) break;
  }
  return static_cast<double>(boost::math::constants::euler<Big>() + log(abs(x)) + sum);
}

double xi_integral(int n, double x, double y) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(
      [&](double t) { return std::exp(-x * t) * std::pow(t + y, -n); }, 1e-13);
}

}  // namespace

TEST_CASE("Ei at reference points") {
  CHECK(exp_integral_ei(-1.0) == doctest::Approx(-0.219383934395520).epsilon(1e-14));
  CHECK(exp_integral_ei(-10.0) == doctest::Approx(-4.156968929685325e-6).epsilon(1e-14));
  CHECK(exp_integral_ei(1.0) == doctest::Approx(1.895117816355937).epsilon(1e-14));
}

TEST_CASE("Ei matches the 400-digit series over the real line") {
  std::vector<double> ts;
  for (int i = 0; i <= 40; ++i) ts.push_back(std::pow(10.0, -6.0 + 8.5 * i / 40.0));  // to ~316
  for (double t : ts) {
    for (double s : {-1.0, 1.0}) {
      const double arg = s * t;
      const double ref = ei_series(arg);
      INFO("t = " << arg);
      CHECK(std::abs(exp_integral_ei(arg) - ref) <= 1e-12 * std::abs(ref));
    }
  }
}

TEST_CASE("Ei on the negative axis is negative and shrinking in magnitude") {
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 0.05; t < 60.0; t *= 1.3) {
    const double v = exp_integral_ei(-t);
    CHECK(v < 0.0);
    CHECK(std::abs(v) < prev);
    prev = std::abs(v);
  }
  CHECK(exp_integral_ei(-0.5) < 0.0);
  CHECK(exp_integral_ei(-5.0) < 0.0);
}

TEST_CASE("Ei rejects its singular point and non-finite input") {
  CHECK_THROWS_AS(exp_integral_ei(0.0), std::domain_error);
  CHECK_THROWS_AS(exp_integral_ei(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(exp_integral_ei(-std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("scaled E1 stays finite where e^z and E1 would not") {
  CHECK(scaled_e1(1.0) == doctest::Approx(0.596347362323194).epsilon(1e-14));
  const double z = 1e6;
  // e^z E1(z) ~ 1/z (1 - 1/z + 2/z^2)
  CHECK(scaled_e1(z) == doctest::Approx((1.0 - 1.0 / z + 2.0 / (z * z)) / z).epsilon(1e-14));
  CHECK_THROWS_AS(scaled_e1(0.0), std::domain_error);
}

TEST_CASE("xi_1(x, 1) is -e^x Ei(-x)") {
  CHECK(xi_n(1, 1.0, 1.0) == doctest::Approx(0.596347362323194).epsilon(1e-14));
  for (double x : {0.1, 1.0, 10.0}) {
    const double ref = -std::exp(x) * exp_integral_ei(-x);
    CHECK(std::abs(xi_n(1, x, 1.0) - ref) <= 1e-12 * ref);
  }
}

TEST_CASE("xi_3(2, 0.5) against its defining integral") {
  // 1.192694724646388148682 from 30-digit quadrature
  CHECK(xi_n(3, 2.0, 0.5) == doctest::Approx(1.192694724646388148682).epsilon(1e-14));
  CHECK(xi_n(3, 2.0, 0.5) == doctest::Approx(xi_integral(3, 2.0, 0.5)).epsilon(1e-12));
}

TEST_CASE("xi_n agrees with quadrature on a coarse grid") {
  for (int n : {1, 2, 4, 7, 11, 15}) {
    for (double x : {1e-3, 3e-2, 1.0, 30.0, 1e3}) {
      for (double y : {0.1, 1.0, 10.0}) {
        const double ref = xi_integral(n, x, y);
        INFO("n=" << n << " x=" << x << " y=" << y);
        CHECK(std::abs(xi_n(n, x, y) - ref) <= 1e-8 * ref);
      }
    }
  }
}

TEST_CASE("xi_n is positive and decreasing in both arguments") {
  const std::vector<double> grid = {1e-3, 1e-2, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0, 1e3};
  for (int n = 1; n <= 15; ++n) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double v = xi_n(n, grid[i], grid[j]);
        CHECK(v > 0.0);
        if (i + 1 < grid.size()) CHECK(xi_n(n, grid[i + 1], grid[j]) < v);
        if (j + 1 < grid.size()) CHECK(xi_n(n, grid[i], grid[j + 1]) < v);
      }
    }
  }
}

TEST_CASE("xi_n survives exponent overflow of the naive product") {
  // xy = 5000: e^{xy} alone overflows
  const double v = xi_n(2, 500.0, 10.0);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(xi_integral(2, 500.0, 10.0)).epsilon(1e-10));
}

TEST_CASE("xi_n domain") {
  CHECK_THROWS_AS(xi_n(0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(xi_n(1, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(xi_n(1, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(xi_n(1, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(xi_n(1, 1.0, std::nan("")), std::domain_error);
}

TEST_CASE("fault hook biases xi_n and resets") {
  const double clean = xi_n(2, 1.0, 1.0);
  testing::set_xi_fault(1e-3);
  CHECK(xi_n(2, 1.0, 1.0) == doctest::Approx(clean * 1.001).epsilon(1e-15));
  testing::set_xi_fault(0.0);
  CHECK(xi_n(2, 1.0, 1.0) == clean);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic_number(1) == 1.0);
  CHECK(harmonic_number(4) == doctest::Approx(2.083333333333333).epsilon(1e-15));
  double prev = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 16; k <= 4096; k *= 2) {
    const double gap = harmonic_number(k) - (std::log(static_cast<double>(k)) + kEulerGamma);
    CHECK(gap > 0.0);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1.5e-4);
  // H_K - ln K - gamma ~ 1/(2K) - 1/(12K^2)
  const double k = 1e7;
  CHECK(harmonic_number(10000000) - std::log(k) - kEulerGamma ==
        doctest::Approx(0.5 / k - 1.0 / (12.0 * k * k)).epsilon(1e-6));
  CHECK_THROWS_AS(harmonic_number(0), std::domain_error);
}
