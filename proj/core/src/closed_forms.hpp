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

// Precision-generic closed forms. Each returns the value together with an
// absolute error bound so callers can pick the working precision.

#include <cmath>

#include "fdsched/analysis.hpp"
#include "precision.hpp"
#include "specfun_impl.hpp"

namespace fdsched::analysis::detail {

namespace kernel = specfun::detail;
using fdsched::detail::Evaluation;

template <class Real>
Real ln2() {
  using std::log;
  return log(Real(2));
}

// Compensated sum of signed terms plus a running absolute error bound.
template <class Real>
class TermSum {
 public:
  void add(const Real& term, const Real& abs_error) {
    sum_.add(term);
    error_ += abs_error;
  }
  Evaluation<Real> finish(const Real& scale = Real(1)) const {
    using std::abs;
    const Real rounding = sum_.magnitude() * Real(4) * kernel::epsilon<Real>();
    return {sum_.value() * scale, (error_ + rounding) * abs(scale)};
  }

 private:
  kernel::CompensatedSum<Real> sum_;
  Real error_{0};
};

// C(K, k) for k = 1..K, updated in place.
template <class Real>
void next_binomial(Real& binom, int n, int k) {
  binom = binom * Real(n - k + 1) / Real(k);
}

template <class Real>
Evaluation<Real> ul_rate(const AnalyticalParams& p) {
  using std::abs;
  const Real a = (Real(p.p0) * Real(p.si_gain) + Real(p.sigma0_sq)) / Real(p.pu);
  const Real accuracy = fdsched::detail::kernel_accuracy<Real>();
  TermSum<Real> sum;
  Real binom = 1;
  for (int k = 1; k <= p.k_u; ++k) {
    next_binomial(binom, p.k_u, k);
    const Real sign = (k % 2 == 1) ? Real(1) : Real(-1);
    const Real term = sign * binom * kernel::scaled_en(1, Real(k) * a);
    sum.add(term, abs(term) * accuracy);
  }
  return sum.finish(Real(1) / ln2<Real>());
}

template <class Real>
Evaluation<Real> dl_rate_a1(const AnalyticalParams& p, double pu) {
  using std::abs;
  const Real p0(p.p0);
  const Real pU(pu);
  const Real accuracy = fdsched::detail::kernel_accuracy<Real>();
  TermSum<Real> sum;
  Real binom = 1;
  for (int k = 1; k <= p.k_d; ++k) {
    next_binomial(binom, p.k_d, k);
    const Real sign = (k % 2 == 1) ? Real(1) : Real(-1);
    const Real b = Real(k) * Real(p.sigmaD_sq) / p0;
    const Real near_pole = p0 / (Real(k) * pU);
    const Real xi_one = kernel::scaled_en(1, b);
    const Real xi_pole = kernel::scaled_en(1, b * near_pole);
    const Real coef = sign * binom * p0 / (p0 - Real(k) * pU);
    sum.add(coef * (xi_one - xi_pole), abs(coef) * (abs(xi_one) + abs(xi_pole)) * accuracy);
  }
  return sum.finish(Real(1) / ln2<Real>());
}

template <class Real>
Evaluation<Real> dl_rate_a2(const AnalyticalParams& p, double pu) {
  using std::abs;
  using std::max;
  const Real p0(p.p0);
  const Real ratio = p0 / Real(pu);
  const Real w = Real(1) / (Real(1) - ratio);
  const Real accuracy = fdsched::detail::kernel_accuracy<Real>();
  TermSum<Real> sum;
  Real binom = 1;
  Real ratio_power = 1;  // (-p0/pu)^k
  for (int k = 1; k <= p.k_d; ++k) {
    next_binomial(binom, p.k_d, k);
    ratio_power *= -ratio;
    const Real coef = binom * ratio_power;
    const Real b = Real(k) * Real(p.sigmaD_sq) / p0;
    Real w_power = 1;  // w_l
    for (int l = 1; l <= k; ++l) {
      w_power *= w;
      const auto xi = kernel::xi_n(k - l + 1, b, ratio);
      const Real sign = (l % 2 == 0) ? Real(1) : Real(-1);
      const Real term = coef * sign * w_power * xi.value;
      sum.add(term, abs(term) * accuracy * max(Real(1), xi.cancellation));
    }
    // w_power == w_k here; (-1)^(1-k) == (-1)^(k+1)
    const Real sign = (k % 2 == 1) ? Real(1) : Real(-1);
    const Real term = coef * sign * w_power * kernel::scaled_en(1, b);
    sum.add(term, abs(term) * accuracy);
  }
  return sum.finish(Real(1) / ln2<Real>());
}

template <class Real>
Evaluation<Real> cdf_ul_sum(double x, const AnalyticalParams& p) {
  using std::exp;
  const Real a = (Real(p.p0) * Real(p.si_gain) + Real(p.sigma0_sq)) / Real(p.pu);
  TermSum<Real> sum;
  Real binom = 1;
  sum.add(Real(1), Real(0));
  for (int k = 1; k <= p.k_u; ++k) {
    next_binomial(binom, p.k_u, k);
    const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
    sum.add(sign * binom * exp(-Real(k) * a * Real(x)), Real(0));
  }
  return sum.finish();
}

template <class Real>
Evaluation<Real> cdf_dl_a1_sum(double x, const AnalyticalParams& p) {
  using std::exp;
  const Real p0(p.p0);
  TermSum<Real> sum;
  Real binom = 1;
  sum.add(Real(1), Real(0));
  for (int k = 1; k <= p.k_d; ++k) {
    next_binomial(binom, p.k_d, k);
    const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
    const Real kx = Real(k) * Real(x);
    sum.add(sign * binom * exp(-kx * Real(p.sigmaD_sq) / p0) / (kx * Real(p.pu) / p0 + Real(1)),
            Real(0));
  }
  return sum.finish();
}

template <class Real>
Evaluation<Real> cdf_dl_a2_sum(double x, const AnalyticalParams& p) {
  using std::exp;
  const Real p0(p.p0);
  const Real base = Real(1) / (-Real(p.pu) * Real(x) / p0 - Real(1));
  const Real decay = exp(-Real(p.sigmaD_sq) * Real(x) / p0);
  TermSum<Real> sum;
  Real binom = 1;
  Real factor = 1;
  sum.add(Real(1), Real(0));
  for (int k = 1; k <= p.k_d; ++k) {
    next_binomial(binom, p.k_d, k);
    factor *= base * decay;
    sum.add(binom * factor, Real(0));
  }
  return sum.finish();
}

}  // namespace fdsched::analysis::detail
