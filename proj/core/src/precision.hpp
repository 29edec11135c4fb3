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

// Working-precision ladder for expressions whose alternating binomial sums
// cancel catastrophically as the user count grows.

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdsched::detail {

template <unsigned Digits>
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                             boost::multiprecision::et_off>;

template <class Real>
struct PrecisionTag {
  using type = Real;
};

/// A value computed in some working precision with an absolute error bound.
template <class Real>
struct Evaluation {
  Real value;
  Real error;
};

struct AdaptiveValue {
  double value = 0.0;
  int digits = 0;  // decimal digits of the precision that was accepted
};

/// Relative accuracy of one special-function evaluation in type Real. Wide
/// types lose up to a quarter of their digits in the E_n series.
template <class Real>
Real kernel_accuracy() {
  constexpr int digits = std::numeric_limits<Real>::digits10;
  if constexpr (digits <= 20) {
    return Real(32) * std::numeric_limits<Real>::epsilon();
  } else {
    using std::pow;
    return pow(Real(10), -Real(digits) * 3 / 4);
  }
}

/// Evaluates body(PrecisionTag<Real>) in double, then in wider precisions
/// until the reported error is within max(rel_target |value|, abs_target).
template <class Body>
AdaptiveValue evaluate_adaptive(Body&& body, double rel_target, double abs_target) {
  double needed_digits = 0.0;
  auto try_tier = [&](auto tag, int digits, AdaptiveValue& out) {
    using Real = typename decltype(tag)::type;
    using std::abs;
    const Evaluation<Real> e = body(tag);
    const double v = static_cast<double>(e.value);
    const Real bound = std::max(Real(rel_target) * abs(e.value), Real(abs_target));
    if (std::isfinite(v) && e.error <= bound) {
      out = {v, digits};
      return true;
    }
    const double ratio = static_cast<double>(e.error / bound);
    if (std::isfinite(ratio) && ratio > 0.0) {
      needed_digits = std::max(needed_digits, digits * 0.75 + std::log10(ratio) + 2.0);
    } else {
      needed_digits = std::max(needed_digits, static_cast<double>(digits) + 1.0);
    }
    return false;
  };

  AdaptiveValue out;
  if (try_tier(PrecisionTag<double>{}, 15, out)) return out;
  if (needed_digits <= 50 * 0.75 && try_tier(PrecisionTag<MpReal<50>>{}, 50, out)) return out;
  if (needed_digits <= 150 * 0.75 && try_tier(PrecisionTag<MpReal<150>>{}, 150, out)) return out;
  if (needed_digits <= 450 * 0.75 && try_tier(PrecisionTag<MpReal<450>>{}, 450, out)) return out;
  if (try_tier(PrecisionTag<MpReal<1100>>{}, 1100, out)) return out;
  throw std::range_error("closed form: cancellation exceeds the widest working precision");
}

}  // namespace fdsched::detail
