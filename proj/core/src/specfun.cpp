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

#include "fdsched/specfun.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specfun_impl.hpp"

namespace fdsched::specfun {

namespace {

std::atomic<double> g_xi_fault{0.0};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string("specfun: non-finite ") + what);
  }
}

}  // namespace

double exp_integral_ei(double t) {
  require_finite(t, "argument to Ei");
  if (t == 0.0) throw std::domain_error("specfun: Ei(0) is singular");
  return detail::ei(t);
}

double scaled_e1(double z) {
  require_finite(z, "argument to scaled E1");
  if (z <= 0.0) throw std::domain_error("specfun: scaled E1 needs z > 0");
  return detail::scaled_en(1, z);
}

double xi_n(int n, double x, double y) {
  require_finite(x, "x in xi_n");
  require_finite(y, "y in xi_n");
  if (n < 1) throw std::domain_error("specfun: xi_n needs n >= 1");
  if (x <= 0.0 || y <= 0.0) throw std::domain_error("specfun: xi_n needs x > 0 and y > 0");
  const double v = detail::xi_n(n, x, y).value;
  const double fault = g_xi_fault.load(std::memory_order_relaxed);
  return fault == 0.0 ? v : v * (1.0 + fault);
}

double harmonic_number(std::int64_t k) {
  if (k < 1) throw std::domain_error("specfun: harmonic number needs K >= 1");
  detail::CompensatedSum<double> sum;
  for (std::int64_t i = k; i >= 1; --i) sum.add(1.0 / static_cast<double>(i));
  return sum.value();
}

namespace testing {

void set_xi_fault(double relative_bias) noexcept {
  g_xi_fault.store(relative_bias, std::memory_order_relaxed);
}

double xi_fault() noexcept { return g_xi_fault.load(std::memory_order_relaxed); }

}  // namespace testing

}  // namespace fdsched::specfun
