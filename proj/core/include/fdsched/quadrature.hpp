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

#include <functional>
#include <stdexcept>
#include <string>

namespace fdsched {

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Thrown when adaptive quadrature cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  const QuadratureResult& achieved() const { return achieved_; }

 private:
  QuadratureResult achieved_;
};

/// Integrates a non-negative, eventually decaying f over [0, inf) to the
/// given absolute tolerance.
///
/// The half line is cut into panels [0,1], [1,2], [2,4], ... each integrated
/// by adaptive Gauss-Kronrod. Panels stop once a panel contributes less than
/// tol/20 and x f(x) at its right end is below tol/20, which bounds the rest
/// of the tail for integrands falling at least as fast as 1/x^2.
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tol);

/// Adaptive Gauss-Kronrod over a finite interval to absolute tolerance `tol`.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double tol);

}  // namespace fdsched
