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

#include "validation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>
#include <unistd.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "commands.hpp"
#include "fdsched/analysis.hpp"
#include "fdsched/power.hpp"
#include "fdsched/random.hpp"
#include "fdsched/scheduling.hpp"
#include "fdsched/sim.hpp"
#include "fdsched/specfun.hpp"

namespace fdsched::cli {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_ = Clock::now();
};

CriterionResult finish(int id, const char* name, bool ok, std::string detail,
                       const Stopwatch& watch, double budget) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.seconds = watch.seconds();
  r.budget_seconds = budget;
  r.passed = ok && r.seconds <= budget;
  if (ok && !r.passed) detail += "; over time budget";
  r.detail = std::move(detail);
  return r;
}

std::string fmt(double x, int digits = 3) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// Scoped fault on the public kernel.
class XiFault {
 public:
  explicit XiFault(bool on) : on_(on) {
    if (on_) specfun::testing::set_xi_fault(1e-6);
  }
  ~XiFault() {
    if (on_) specfun::testing::set_xi_fault(0.0);
  }
  XiFault(const XiFault&) = delete;
  XiFault& operator=(const XiFault&) = delete;

 private:
  bool on_;
};

// int_0^inf e^(-xt) (t+y)^(-n) dt = y^-n / x * int_0^inf e^-s (1 + s/(xy))^-n ds,
// the second integral cut into panels that start at the kink width xy.
double xi_by_quadrature(int n, double x, double y) {
  using boost::math::quadrature::gauss_kronrod;
  const double c = x * y;
  auto f = [&](double s) { return std::exp(-s) * std::pow(1.0 + s / c, -n); };
  double lo = 0.0;
  double width = std::min(1.0, c);
  double total = 0.0;
  while (lo < 745.0) {
    const double hi = lo + width;
    const double part = gauss_kronrod<double, 61>::integrate(f, lo, hi, 10, 1e-12);
    total += part;
    if (lo > 1.0 && part < 1e-18 * total) break;
    lo = hi;
    width *= 2.0;
  }
  return total * std::pow(y, -n) / x;
}

struct OperatingPoint {
  const char* label;
  double p0, pu, sigma0_sq, sigmaD_sq, si_gain;
};

SystemConfig system_config(const OperatingPoint& op, int k) {
  return {op.p0, op.pu, op.sigma0_sq, op.sigmaD_sq, op.si_gain, k, k};
}

analysis::AnalyticalParams params_of(const OperatingPoint& op, int k) {
  return {op.p0, op.pu, op.sigma0_sq, op.sigmaD_sq, op.si_gain, k, k};
}

enum class Triangle { A1, A2 };

CriterionResult check_triangle(const ValidationOptions& options, Triangle which) {
  using namespace analysis;
  Stopwatch watch;
  const XiFault fault(options.inject_xi_fault);
  const std::int64_t trials = options.quick ? 100000 : 1000000;
  const std::uint64_t seed = 20260524;
  std::vector<OperatingPoint> points = {
      {"dense", 1.0, 0.8, 1e-2, 1e-2, 1e-8},
      {"noisy", 2.0, 1.0, 0.5, 1.0, 0.1},
  };
  if (which == Triangle::A1) {
    points.push_back({"p0~2pu", 1.0, 0.49999999, 0.3, 0.3, 1e-3});
    points.push_back({"p0=pu", 0.5, 0.5, 0.3, 0.3, 1e-3});
  } else {
    points.push_back({"p0=pu", 0.5, 0.5, 0.3, 0.3, 1e-3});
  }
  RunOptions run;
  run.workers = options.workers;

  bool ok = true;
  double worst_rel = 0.0, worst_z = 0.0;
  std::string failures;
  for (const auto& op : points) {
    for (int k : {1, 2, 5}) {
      const auto p = params_of(op, k);
      const Cdf ul = [&](double x) { return cdf_sinr_ul(x, p); };
      const Cdf dl = [&](double x) {
        return which == Triangle::A1 ? cdf_sinr_dl_a1(x, p) : cdf_sinr_dl_a2(x, p);
      };
      const auto closed = which == Triangle::A1 ? avg_rate_a1(p) : avg_rate_a2(p);
      const double quad = avg_rate_integral(ul, dl, 1e-10);
      const double rel = std::abs(closed.value - quad) / closed.value;
      const double tol = (which == Triangle::A2 && closed.flagged) ? 1e-5 : 1e-6;

      const auto mc = run_trials(system_config(op, k),
                                 which == Triangle::A1 ? Scheduler::A1 : Scheduler::A2, trials,
                                 seed, run);
      const double z = std::abs(mc.mean_sum_rate - closed.value) / mc.std_error;
      worst_rel = std::max(worst_rel, rel);
      worst_z = std::max(worst_z, z);
      if (!(rel <= tol) || !(z <= 3.0)) {
        ok = false;
        failures += std::string(" [") + op.label + " K=" + std::to_string(k) +
                    " rel=" + fmt(rel) + " z=" + fmt(z) + "]";
      }
    }
  }
  std::string detail = "max rel vs quadrature " + fmt(worst_rel) + ", max |z| vs MC " +
                       fmt(worst_z) + " (" + std::to_string(trials) + " trials)" + failures;
  return which == Triangle::A1
             ? finish(2, "a1 closed form / quadrature / Monte Carlo", ok, detail, watch, 120)
             : finish(3, "a2 closed form / quadrature / Monte Carlo", ok, detail, watch, 120);
}

// Sup distance between the empirical CDF of `samples` and `cdf`.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

std::string scratch_dir() {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("fdsched-validate-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

CriterionResult check_xi_kernel(const ValidationOptions& options) {
  Stopwatch watch;
  const XiFault fault(options.inject_xi_fault);
  const int nx = options.quick ? 13 : 25;
  std::vector<double> xs;
  for (int i = 0; i < nx; ++i) xs.push_back(std::pow(10.0, -3.0 + 6.0 * i / (nx - 1)));

  double worst = 0.0;
  std::string where;
  for (int n = 1; n <= 15; ++n) {
    for (double x : xs) {
      for (double y : {0.1, 1.0, 10.0}) {
        const double ref = xi_by_quadrature(n, x, y);
        const double rel = std::abs(specfun::xi_n(n, x, y) - ref) / ref;
        if (!(rel <= worst)) {
          worst = rel;
          where = "n=" + std::to_string(n) + " x=" + fmt(x) + " y=" + fmt(y);
        }
      }
    }
  }
  // e^x Ei(-x) leaves double range past x ~ 700
  double worst_identity = 0.0;
  for (double x : xs) {
    if (x > 700.0) continue;
    const double ref = -std::exp(x) * specfun::exp_integral_ei(-x);
    worst_identity = std::max(worst_identity, std::abs(specfun::xi_n(1, x, 1.0) - ref) / ref);
  }
  const bool ok = worst <= 1e-8 && worst_identity <= 1e-12;
  return finish(1, "xi kernel vs quadrature and Ei identity", ok,
                "max rel " + fmt(worst) + " at " + where + ", identity max rel " +
                    fmt(worst_identity),
                watch, 5);
}

CriterionResult check_a1_triangle(const ValidationOptions& options) {
  return check_triangle(options, Triangle::A1);
}

CriterionResult check_a2_triangle(const ValidationOptions& options) {
  return check_triangle(options, Triangle::A2);
}

CriterionResult check_binary_opa(const ValidationOptions& options) {
  Stopwatch watch;
  const int n = options.quick ? 2000 : 10000;
  const std::uint64_t seed = 4242;
  RandomStream params(seed, 0);
  auto log_uniform = [&](double lo, double hi) {
    return std::pow(10.0, lo + (hi - lo) * params.uniform());
  };
  int grid_violations = 0, fast_mismatches = 0, fast_count = 0;
  double worst_excess = -1e300;
  for (int i = 0; i < n; ++i) {
    SystemConfig config{log_uniform(-2, 2), log_uniform(-2, 2), log_uniform(-3, 0),
                        log_uniform(-3, 0), log_uniform(-12, 0), 5, 5};
    RandomStream rng(seed, static_cast<std::uint64_t>(i) + 1);
    const auto ch = draw_realization(config, rng);
    const auto u = static_cast<std::size_t>(params.uniform() * 5.0);
    const auto d = static_cast<std::size_t>(params.uniform() * 5.0);

    const auto corners = opa_by_enumeration(ch, u, d, config);
    const double best_corner =
        pair_rates(ch, config, u, d, corners.p0_star, corners.pu_star).r_sum;
    double best_grid = 0.0;
    for (int a = 0; a <= 50; ++a) {
      for (int b = 0; b <= 50; ++b) {
        const double p0 = config.p0_max * (a / 50.0);
        const double pu = config.pu_max * (b / 50.0);
        best_grid = std::max(best_grid, pair_rates(ch, config, u, d, p0, pu).r_sum);
      }
    }
    worst_excess = std::max(worst_excess, best_grid - best_corner);
    if (best_grid > best_corner + 1e-9) ++grid_violations;

    const auto decision = opa(ch, u, d, config);
    if (decision.fast_path) {
      ++fast_count;
      if (decision.mode != corners.mode || decision.p0_star != corners.p0_star ||
          decision.pu_star != corners.pu_star) {
        ++fast_mismatches;
      }
    }
  }
  const bool ok = grid_violations == 0 && fast_mismatches == 0;
  return finish(4, "binary power allocation", ok,
                std::to_string(n) + " realizations, grid excess max " + fmt(worst_excess) +
                    ", grid violations " + std::to_string(grid_violations) +
                    ", fast-path " + std::to_string(fast_count) + " with " +
                    std::to_string(fast_mismatches) + " disagreements",
                watch, 60);
}

CriterionResult check_dominance(const ValidationOptions& options) {
  Stopwatch watch;
  RunOptions run;
  run.workers = options.workers;
  std::vector<LinkBudget> budgets(3);
  budgets[1].p0_dbm = 0.0;
  budgets[1].pu_dbm = -1.0;
  budgets[1].si_cancellation_db = 90.0;
  budgets[2].p0_dbm = 10.0;
  budgets[2].pu_dbm = 9.5;
  budgets[2].si_cancellation_db = 110.0;
  budgets[2].k_u = budgets[2].k_d = 15;
  std::int64_t violations = 0;
  std::uint64_t seed = 99;
  for (const auto& b : budgets) {
    violations +=
        run_coupled(config_from_db(b), all_schedulers(), 10000, seed++, run).dominance_violations;
  }
  return finish(5, "per-realization dominance", violations == 0,
                "3 operating points x 10000 coupled trials, " + std::to_string(violations) +
                    " violations",
                watch, 60);
}

CriterionResult check_cdf_laws(const ValidationOptions&) {
  using namespace analysis;
  Stopwatch watch;
  const int n = 100000;
  const SystemConfig config{1.0, 0.8, 0.1, 0.1, 1e-2, 5, 5};
  const auto p = AnalyticalParams::from_config(config);
  std::vector<double> ul(n), dl_a1(n), dl_a2(n);
  ChannelRealization ch;
  for (int i = 0; i < n; ++i) {
    RandomStream rng(777, static_cast<std::uint64_t>(i));
    draw_realization_into(config, rng, ch);
    const auto a1 = select_a1(ch, config);
    const auto a2 = select_a2(ch, config);
    ul[i] = sinr_ul(ch, *a1.ul, config.p0_max, config.pu_max, config.sigma0_sq);
    dl_a1[i] = sinr_dl(ch, *a1.dl, a1.ul, config.p0_max, config.pu_max, config.sigmaD_sq);
    dl_a2[i] = sinr_dl(ch, *a2.dl, a2.ul, config.p0_max, config.pu_max, config.sigmaD_sq);
  }
  const double d_ul = ks_distance(ul, [&](double x) { return cdf_sinr_ul(x, p); });
  const double d_a1 = ks_distance(dl_a1, [&](double x) { return cdf_sinr_dl_a1(x, p); });
  const double d_a2 = ks_distance(dl_a2, [&](double x) { return cdf_sinr_dl_a2(x, p); });
  const bool ok = d_ul <= 0.01 && d_a1 <= 0.01 && d_a2 <= 0.01;
  return finish(6, "SINR distribution laws", ok,
                "KS distance ul " + fmt(d_ul) + ", dl-a1 " + fmt(d_a1) + ", dl-a2 " +
                    fmt(d_a2) + " at " + std::to_string(n) + " samples",
                watch, 60);
}

CriterionResult check_trends(const ValidationOptions& options) {
  Stopwatch watch;
  const std::int64_t trials = options.quick ? 20000 : 100000;
  RunOptions run;
  run.workers = options.workers;
  bool ok = true;
  std::string detail;

  // (a) FD share after OPA, at a power level where the choice is contested
  {
    auto fd = [&](Scheduler s, int k, double si) {
      LinkBudget b;
      b.p0_dbm = 0.0;
      b.pu_dbm = -1.0;
      b.si_cancellation_db = si;
      b.k_u = b.k_d = k;
      return run_trials(config_from_db(b), s, trials, 31, run).fd_fraction;
    };
    bool a_ok = true;
    std::string a_detail;
    for (Scheduler s : {Scheduler::A1_OPA, Scheduler::A2_OPA, Scheduler::A3_OPA}) {
      const double k5_80 = fd(s, 5, 80), k15_80 = fd(s, 15, 80);
      const double k5_90 = fd(s, 5, 90), k15_90 = fd(s, 15, 90);
      a_ok = a_ok && k15_80 > k5_80 && k15_90 > k5_90 && k5_90 > k5_80 && k15_90 > k15_80;
      a_detail += std::string(" ") + std::string(to_string(s)) + " " + fmt(k5_80, 2) + "->" +
                  fmt(k15_80, 2) + "/" + fmt(k5_90, 2) + "->" + fmt(k15_90, 2);
    }
    ok = ok && a_ok;
    detail += std::string("(a) ") + (a_ok ? "ok" : "FAIL") + a_detail;
  }

  // (b) ES_FD against HD_TDD over the Fig. 2 power sweep at 80 dB
  {
    SweepSpec spec;
    spec.parameter = SweepParameter::P0Dbm;
    for (double v = -40.0; v <= 30.0; v += 5.0) spec.values.push_back(v);
    spec.pu_dbm_scale = 0.95;
    spec.base.si_cancellation_db = 80.0;
    spec.n_trials = trials;
    spec.seed = 32;
    spec.scheduler = Scheduler::ES_FD;
    const auto es_fd = run_sweep(spec, run);
    spec.scheduler = Scheduler::HD_TDD;
    const auto hd = run_sweep(spec, run);
    spec.scheduler = Scheduler::ES_FDHD;
    const auto es_fdhd = run_sweep(spec, run);
    std::size_t cross = spec.values.size();
    while (cross > 0 && es_fd[cross - 1].stats.mean_sum_rate < hd[cross - 1].stats.mean_sum_rate) {
      --cross;
    }
    bool fdhd_ok = true;
    for (std::size_t i = 0; i < hd.size(); ++i) {
      fdhd_ok = fdhd_ok && es_fdhd[i].stats.mean_sum_rate >= hd[i].stats.mean_sum_rate;
    }
    const bool b_ok = cross > 0 && cross < spec.values.size() && fdhd_ok;
    ok = ok && b_ok;
    detail += std::string("; (b) ") + (b_ok ? "ok" : "FAIL") +
              (cross > 0 && cross < spec.values.size()
                   ? " ES_FD below HD_TDD from p0=" + fmt(spec.values[cross]) + " dBm"
                   : " no crossover") +
              (fdhd_ok ? ", ES_FDHD never below" : ", ES_FDHD below HD_TDD");
  }

  // (c) Fig. 4 conditions: 20 dB SI, K sweep
  {
    bool c_ok = true;
    double prev_a2 = -1e300, prev_a3 = -1e300;
    std::string c_detail;
    for (int k : {5, 10, 15}) {
      LinkBudget b;
      b.si_cancellation_db = 20.0;
      b.k_u = b.k_d = k;
      const auto config = config_from_db(b);
      const double r1 = run_trials(config, Scheduler::A1, trials, 33, run).mean_sum_rate;
      const double r2 = run_trials(config, Scheduler::A2, trials, 33, run).mean_sum_rate;
      const double r3 = run_trials(config, Scheduler::A3, trials, 33, run).mean_sum_rate;
      c_ok = c_ok && r2 >= r1 && r2 - r1 > prev_a2 && r3 - r1 > prev_a3;
      prev_a2 = r2 - r1;
      prev_a3 = r3 - r1;
      c_detail += " K=" + std::to_string(k) + " gap " + fmt(r2 - r1) + "/" + fmt(r3 - r1);
    }
    ok = ok && c_ok;
    detail += std::string("; (c) ") + (c_ok ? "ok" : "FAIL") + c_detail;
  }
  return finish(7, "qualitative trends", ok, detail, watch, 180);
}

CriterionResult check_asymptotic_trend(const ValidationOptions& options) {
  using namespace analysis;
  Stopwatch watch;
  const XiFault fault(options.inject_xi_fault);
  bool ok = true;
  double prev = 1e300;
  std::string detail = "relative gap";
  for (int k : {16, 64, 256, 1024}) {
    const AnalyticalParams p{1.0, 0.8, 1e-2, 1e-2, 0.0, k, k};
    const double exact = avg_rate_a1(p).value;
    const double gap = std::abs(exact - asymptotic_rate_a1(p).bits) / exact;
    ok = ok && gap < prev;
    prev = gap;
    detail += " K=" + std::to_string(k) + ":" + fmt(gap, 4);
  }
  return finish(8, "large-K growth law trend", ok, detail, watch, 10);
}

CriterionResult check_determinism(const ValidationOptions& options) {
  Stopwatch watch;
  const std::string dir = scratch_dir();
  const std::string trials = options.quick ? "2000" : "20000";
  const std::string a = dir + "/w1.csv", b = dir + "/w3.csv", c = dir + "/replay.csv";
  std::ostringstream sink;
  const int ra = run_cli({"fdsched", "simulate", "--preset", "fig3", "--trials", trials, "--seed",
                          "11", "--workers", "1", "--out", a},
                         sink, sink);
  const int rb = run_cli({"fdsched", "simulate", "--preset", "fig3", "--trials", trials, "--seed",
                          "11", "--workers", "3", "--out", b},
                         sink, sink);
  const int rc = run_cli(
      {"fdsched", "simulate", "--config", a + ".manifest.json", "--workers", "2", "--out", c},
      sink, sink);
  const std::string ca = slurp(a);
  const bool ok = ra == 0 && rb == 0 && rc == 0 && !ca.empty() && ca == slurp(b) &&
                  ca == slurp(c);
  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  return finish(9, "byte-identical output across worker counts", ok,
                ok ? "workers 1 vs 3 and manifest replay identical (" + std::to_string(ca.size()) +
                         " bytes)"
                   : "outputs differ or a run failed: " + sink.str(),
                watch, 30);
}

std::vector<CriterionResult> run_validation(const ValidationOptions& options, std::ostream* log) {
  using Check = CriterionResult (*)(const ValidationOptions&);
  const Check checks[] = {check_xi_kernel,  check_a1_triangle,      check_a2_triangle,
                          check_binary_opa, check_dominance,        check_cdf_laws,
                          check_trends,     check_asymptotic_trend, check_determinism};
  std::vector<CriterionResult> out;
  for (const Check check : checks) {
    CriterionResult r;
    try {
      r = check(options);
    } catch (const std::exception& e) {
      r.id = static_cast<int>(out.size()) + 1;
      r.name = "criterion " + std::to_string(r.id);
      r.detail = std::string("threw: ") + e.what();
    }
    if (log) {
      *log << "[" << r.id << "] " << (r.passed ? "pass" : "FAIL") << " " << fmt(r.seconds)
           << " s\n";
    }
    out.push_back(std::move(r));
  }
  return out;
}

void print_results(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << "  ("
        << fmt(r.seconds) << " s / " << fmt(r.budget_seconds) << " s)  " << r.detail << "\n";
  }
}

}  // namespace fdsched::cli
