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

// Precision-generic kernels shared by the double API in specfun.cpp and the
// extended-precision closed forms in analysis.cpp. Real is double or a
// boost::multiprecision number; math calls resolve through ADL.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdsched::specfun::detail {

inline constexpr int kMaxIterations = 200000;

template <class Real>
Real euler_gamma() {
  return boost::math::constants::euler<Real>();
}

template <class Real>
Real epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

/// Neumaier-compensated running sum that also tracks sum |terms|, so callers
/// can estimate how much cancellation happened.
template <class Real>
class CompensatedSum {
 public:
  void add(const Real& v) {
    using std::abs;
    const Real t = sum_ + v;
    if (abs(sum_) >= abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    magnitude_ += abs(v);
  }
  Real value() const { return sum_ + comp_; }
  const Real& magnitude() const { return magnitude_; }

 private:
  Real sum_{0};
  Real comp_{0};
  Real magnitude_{0};
};

/// Largest argument for which the alternating power series of E_n is used.
/// In double this is the classical boundary at 1. Wider types can absorb the
/// e^z growth of the series terms, and the continued fraction converges too
/// slowly near 1 at hundreds of digits, so the boundary moves out to where at
/// most a quarter of the working digits are lost.
template <class Real>
Real series_cutoff() {
  constexpr int digits = std::numeric_limits<Real>::digits10;
  if constexpr (digits <= 20) {
    return Real(1);
  } else {
    using std::log;
    return Real(digits) * log(Real(10)) / 4;
  }
}

/// E_n(z) for z > 0 by its power series.
template <class Real>
Real en_series(int n, const Real& z) {
  using std::abs;
  using std::log;
  const int nm1 = n - 1;
  const Real eps = epsilon<Real>();
  Real ans = nm1 != 0 ? Real(1) / Real(nm1) : Real(-log(z) - euler_gamma<Real>());
  Real fact = 1;
  for (int i = 1; i < kMaxIterations; ++i) {
    fact *= -z / Real(i);
    Real del;
    if (i != nm1) {
      del = -fact / Real(i - nm1);
    } else {
      Real psi = -euler_gamma<Real>();
      for (int ii = 1; ii <= nm1; ++ii) psi += Real(1) / Real(ii);
      del = fact * (-log(z) + psi);
    }
    ans += del;
    if (abs(del) < abs(ans) * eps) return ans;
  }
  throw std::runtime_error("specfun: E_n series failed to converge");
}

/// e^z E_n(z) for z > 0 by the modified-Lentz continued fraction.
template <class Real>
Real scaled_en_fraction(int n, const Real& z) {
  using std::abs;
  const Real eps = epsilon<Real>();
  const Real tiny = std::numeric_limits<Real>::min() / eps;
  const int nm1 = n - 1;
  Real b = z + Real(n);
  Real c = Real(1) / tiny;
  Real d = Real(1) / b;
  Real h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const Real a = -Real(i) * Real(nm1 + i);
    b += 2;
    d = Real(1) / (a * d + b);
    c = b + a / c;
    const Real del = c * d;
    h *= del;
    if (abs(del - Real(1)) <= eps) return h;
  }
  throw std::runtime_error("specfun: E_n continued fraction failed to converge");
}

/// e^z E_n(z), z > 0, n >= 1.
template <class Real>
Real scaled_en(int n, const Real& z) {
  using std::exp;
  if (z <= series_cutoff<Real>()) return exp(z) * en_series(n, z);
  return scaled_en_fraction(n, z);
}

/// E1(z), z > 0.
template <class Real>
Real e1(const Real& z) {
  using std::exp;
  if (z <= series_cutoff<Real>()) return en_series(1, z);
  return exp(-z) * scaled_en_fraction(1, z);
}

/// Ei(t), t > 0: convergent series with all-positive terms, switching to the
/// asymptotic expansion beyond 40 in hardware precision.
template <class Real>
Real ei_positive(const Real& t) {
  using std::abs;
  using std::exp;
  using std::log;
  const Real eps = epsilon<Real>();
  if (std::numeric_limits<Real>::digits10 <= 20 && t > Real(40)) {
    Real sum = 1;
    Real term = 1;
    for (int k = 1; k < 200; ++k) {
      const Real prev = term;
      term *= Real(k) / t;
      if (term > prev) break;  // asymptotic series started diverging
      sum += term;
      if (term < eps * sum) break;
    }
    return exp(t) / t * sum;
  }
  Real sum = 0;
  Real power = 1;  // t^k / k!
  for (int k = 1; k < kMaxIterations; ++k) {
    power *= t / Real(k);
    const Real contrib = power / Real(k);
    sum += contrib;
    if (contrib < eps * sum) return euler_gamma<Real>() + log(t) + sum;
  }
  throw std::runtime_error("specfun: Ei series failed to converge");
}

template <class Real>
Real ei(const Real& t) {
  if (t > 0) return ei_positive(t);
  return -e1(Real(-t));
}

template <class Real>
struct XiValue {
  Real value;
  bool used_fallback;
  Real cancellation;  // sum |terms| / value, 1 when nothing cancelled
};

/// Cancellation the finite-sum form may suffer before falling back to the
/// E_n form: 1e-9 relative in double, the same number of lost digits in
/// wider types.
template <class Real>
Real cancellation_budget() {
  return Real(4.5e6) * epsilon<Real>();
}

template <class Real>
XiValue<Real> xi_n(int n, const Real& x, const Real& y) {
  using std::abs;
  using std::pow;
  using std::isfinite;
  const Real z = x * y;
  const Real se1 = scaled_en(1, z);
  if (n == 1) return {se1, false, Real(1)};

  CompensatedSum<Real> sum;
  Real term = pow(y, Real(1 - n)) / Real(n - 1);  // k = n - 1
  for (int k = n - 1; k >= 1; --k) {
    sum.add(term);
    if (k > 1) term *= -z / Real(k - 1);
  }
  sum.add(term * (-z) * se1);  // term is now the k = 1 summand

  const Real value = sum.value();
  const bool trusted = value > 0 && isfinite(value) &&
                       sum.magnitude() * epsilon<Real>() * 4 <= cancellation_budget<Real>() * value;
  if (trusted) return {value, false, Real(sum.magnitude() / value)};
  return {pow(y, Real(1 - n)) * scaled_en(n, z), true, Real(1)};
}

}  // namespace fdsched::specfun::detail
