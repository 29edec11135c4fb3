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

#include <cstdint>

/// Special functions behind the closed-form rate expressions.
///
/// All functions are pure; they throw std::domain_error outside their
/// domain and never return NaN for valid input.
namespace fdsched::specfun {

/// Exponential integral Ei(t) for real t != 0.
///
/// For t < 0 this is -E1(-t). Relative error is at the level of a few ulps
/// over the whole real line; Ei(t) overflows to +inf for t > ~709.
double exp_integral_ei(double t);

/// e^z E1(z) for z > 0, evaluated without forming e^z or E1(z) separately
/// so it stays finite for arbitrarily large z.
double scaled_e1(double z);

/// The rate-integral kernel
///
///   xi_n(x, y) = ((-x)^(n-1) / Gamma(n)) *
///                ( sum_{k=1}^{n-1} Gamma(k) (-x)^(-k) y^(-k) - e^(xy) Ei(-xy) )
///
/// which equals  int_0^inf e^(-x t) (t + y)^(-n) dt.
///
/// The finite sum is accumulated with compensated summation. When the
/// estimated loss to cancellation exceeds 1e-9 relative, the value is taken
/// from the equivalent form y^(1-n) e^(xy) E_n(xy) instead.
///
/// Requires n >= 1, x > 0, y > 0 (all finite).
double xi_n(int n, double x, double y);

/// H_K = sum_{k=1}^{K} 1/k by direct summation. Requires K >= 1.
double harmonic_number(std::int64_t k);

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

namespace testing {

/// Fault-injection hook for the validation suite: scales every value
/// returned by xi_n by (1 + relative_bias). Zero disables it.
void set_xi_fault(double relative_bias) noexcept;
double xi_fault() noexcept;

}  // namespace testing

}  // namespace fdsched::specfun
