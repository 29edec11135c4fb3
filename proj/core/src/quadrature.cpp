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

#include "fdsched/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fdsched {

namespace {

constexpr unsigned kMaxDepth = 20;
constexpr int kMaxPanels = 80;
constexpr double kRelFloor = 1e-12;

QuadratureResult gk(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  QuadratureResult r;
  double l1 = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, kMaxDepth, rel_tol, &r.error_bound, &l1);
  return r;
}

[[noreturn]] void fail(const char* where, QuadratureResult achieved, double tol) {
  std::ostringstream msg;
  msg << where << ": no convergence to " << tol << " (achieved error bound "
      << achieved.error_bound << ")";
  throw QuadratureError(msg.str(), achieved);
}

}  // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double tol) {
  QuadratureResult r = gk(f, a, b, tol * 1e-2);
  if (!(r.error_bound <= tol) || !std::isfinite(r.value)) fail("integrate_interval", r, tol);
  return r;
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tol) {
  QuadratureResult total;
  double lo = 0.0;
  double hi = 1.0;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    // relative target for this panel from a coarse look at its size
    const double rough = std::abs(gk(f, lo, hi, 1.0).value);
    const double rel = std::max(kRelFloor, tol / (40.0 * std::max(rough, tol)));
    const QuadratureResult r = gk(f, lo, hi, rel);
    total.value += r.value;
    total.error_bound += r.error_bound;
    if (!std::isfinite(total.value)) fail("integrate_half_line", total, tol);
    if (std::abs(r.value) < tol / 20 && std::abs(hi * f(hi)) < tol / 20) {
      if (!(total.error_bound <= tol)) fail("integrate_half_line", total, tol);
      return total;
    }
    lo = hi;
    hi *= 2.0;
  }
  fail("integrate_half_line", total, tol);
}

}  // namespace fdsched
