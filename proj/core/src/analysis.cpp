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

#include "fdsched/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "closed_forms.hpp"
#include "precision.hpp"

namespace fdsched::analysis {

namespace {

using namespace analysis::detail;
using fdsched::detail::Evaluation;

constexpr double kRateRelTarget = 1e-12;
constexpr double kCdfAbsTarget = 1e-13;
constexpr double kSingularTol = 1e-9;
constexpr double kPerturbation = 1e-6;

template <template <class> class Sum>
double evaluate_cdf(double x, const AnalyticalParams& p) {
  p.validate();
  if (std::isnan(x) || x < 0.0) throw std::invalid_argument("CDF argument must be >= 0");
  if (std::isinf(x)) return 1.0;
  const auto v = fdsched::detail::evaluate_adaptive(
      [&](auto tag) { return Sum<typename decltype(tag)::type>{}(x, p); }, 0.0, kCdfAbsTarget);
  return std::clamp(v.value, 0.0, 1.0);
}

template <class Real>
struct UlCdf {
  Evaluation<Real> operator()(double x, const AnalyticalParams& p) const { return cdf_ul_sum<Real>(x, p); }
};
template <class Real>
struct DlA1Cdf {
  Evaluation<Real> operator()(double x, const AnalyticalParams& p) const { return cdf_dl_a1_sum<Real>(x, p); }
};
template <class Real>
struct DlA2Cdf {
  Evaluation<Real> operator()(double x, const AnalyticalParams& p) const { return cdf_dl_a2_sum<Real>(x, p); }
};

ClosedFormValue combine(const fdsched::detail::AdaptiveValue& ul, const fdsched::detail::AdaptiveValue& dl,
                        bool flagged) {
  return {ul.value + dl.value, flagged, std::max(ul.digits, dl.digits)};
}

fdsched::detail::AdaptiveValue ul_adaptive(const AnalyticalParams& p) {
  return fdsched::detail::evaluate_adaptive(
      [&](auto tag) { return ul_rate<typename decltype(tag)::type>(p); }, kRateRelTarget, 0.0);
}

}  // namespace

void AnalyticalParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(std::isfinite(p0) && p0 > 0.0, "analysis needs finite p0 > 0");
  require(std::isfinite(pu) && pu > 0.0, "analysis needs finite pu > 0");
  require(std::isfinite(sigma0_sq) && sigma0_sq > 0.0, "analysis needs sigma0_sq > 0");
  require(std::isfinite(sigmaD_sq) && sigmaD_sq > 0.0, "analysis needs sigmaD_sq > 0");
  require(std::isfinite(si_gain) && si_gain >= 0.0, "analysis needs si_gain >= 0");
  require(k_u >= 1 && k_d >= 1, "analysis needs k_u, k_d >= 1");
}

AnalyticalParams AnalyticalParams::from_config(const SystemConfig& c) {
  return {c.p0_max, c.pu_max, c.sigma0_sq, c.sigmaD_sq, c.si_gain, c.k_u, c.k_d};
}

double cdf_sinr_ul(double x, const AnalyticalParams& p) { return evaluate_cdf<UlCdf>(x, p); }

double cdf_sinr_dl_a1(double x, const AnalyticalParams& p) { return evaluate_cdf<DlA1Cdf>(x, p); }

double cdf_sinr_dl_a2(double x, const AnalyticalParams& p) { return evaluate_cdf<DlA2Cdf>(x, p); }

double avg_rate_integral(const Cdf& cdf_ul, const Cdf& cdf_dl, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be > 0");
  const double ln2 = std::log(2.0);
  const auto r = integrate_half_line(
      [&](double x) { return (2.0 - cdf_ul(x) - cdf_dl(x)) / (x + 1.0); }, tol * ln2);
  return r.value / ln2;
}

ClosedFormValue avg_rate_ul_closed(const AnalyticalParams& p) {
  p.validate();
  const auto ul = ul_adaptive(p);
  return {ul.value, false, ul.digits};
}

ClosedFormValue avg_rate_a1(const AnalyticalParams& p) {
  p.validate();
  double pu = p.pu;
  bool flagged = false;
  for (int k = 1; k <= p.k_d; ++k) {
    if (std::abs(p.p0 - k * p.pu) / p.pu < kSingularTol) {
      pu = p.pu * (1.0 + kPerturbation);
      flagged = true;
      break;
    }
  }
  const auto dl = fdsched::detail::evaluate_adaptive(
      [&](auto tag) { return dl_rate_a1<typename decltype(tag)::type>(p, pu); }, kRateRelTarget,
      0.0);
  return combine(ul_adaptive(p), dl, flagged);
}

ClosedFormValue avg_rate_a2(const AnalyticalParams& p) {
  p.validate();
  double pu = p.pu;
  bool flagged = false;
  if (std::abs(1.0 - p.p0 / p.pu) < kSingularTol) {
    pu = p.pu * (1.0 + kPerturbation);
    flagged = true;
  }
  const auto dl = fdsched::detail::evaluate_adaptive(
      [&](auto tag) { return dl_rate_a2<typename decltype(tag)::type>(p, pu); }, kRateRelTarget,
      0.0);
  return combine(ul_adaptive(p), dl, flagged);
}

AsymptoticRate asymptotic_rate_a1(const AnalyticalParams& p) {
  p.validate();
  if (p.k_u < 2 || p.k_d < 2) {
    throw std::domain_error("asymptotic rate needs K_U >= 2 and K_D >= 2");
  }
  const double nats = std::log(std::log(p.k_d) * std::log(p.k_u)) +
                      std::log(p.pu / (p.p0 * p.si_gain + p.sigma0_sq));
  return {nats, nats / std::log(2.0)};
}

}  // namespace fdsched::analysis
