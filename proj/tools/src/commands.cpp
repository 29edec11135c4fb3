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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fdsched/analysis.hpp"
#include "fdsched/quadrature.hpp"
#include "fdsched/random.hpp"
#include "fdsched/version.hpp"
#include "validation.hpp"

namespace fdsched::cli {

namespace {

// Numeric flags are captured loosely and typed during settings parsing, so
// "--trials 1e5" works and every error names its flag.
struct LinkFlags {
  double p0_dbm = 0, pu_dbm = 0, si_db = 0, nf_bs_db = 0, nf_mt_db = 0, bandwidth_hz = 0;
  double kd = 0, ku = 0;
  std::string format;
  std::string out;
  std::string config;
  std::vector<std::pair<CLI::Option*, std::string>> bound;

  void add(CLI::App* app) {
    bound.emplace_back(app->add_option("--p0-dbm", p0_dbm, "BS transmit power (dBm)"), "p0_dbm");
    bound.emplace_back(app->add_option("--pu-dbm", pu_dbm, "UL MT transmit power (dBm)"),
                       "pu_dbm");
    bound.emplace_back(app->add_option("--si-db", si_db, "SI cancellation (dB)"), "si_db");
    bound.emplace_back(app->add_option("--nf-bs-db", nf_bs_db, "BS noise figure (dB)"),
                       "nf_bs_db");
    bound.emplace_back(app->add_option("--nf-mt-db", nf_mt_db, "MT noise figure (dB)"),
                       "nf_mt_db");
    bound.emplace_back(app->add_option("--bandwidth-hz", bandwidth_hz, "noise bandwidth (Hz)"),
                       "bandwidth_hz");
    bound.emplace_back(app->add_option("--kd", kd, "DL users"), "kd");
    bound.emplace_back(app->add_option("--ku", ku, "UL users"), "ku");
    bound.emplace_back(app->add_option("--format", format, "csv or json"), "format");
    app->add_option("--out", out, "output file (stdout when absent)");
    app->add_option("--config", config, "JSON settings or a run manifest");
  }
};

Json collect(const std::vector<std::pair<CLI::Option*, std::string>>& bound) {
  Json flags = Json::object();
  for (const auto& [opt, key] : bound) {
    if (opt->count() == 0) continue;
    const auto& results = opt->results();
    const std::string& text = results.back();
    if (key == "format" || key == "preset" || key == "scheduler" || key == "sweep" ||
        key == "values" || key == "alg") {
      flags[key] = text;
    } else if (key == "coupled" || key == "asymptotic") {
      flags[key] = true;
    } else if (key == "seed") {
      flags[key] = opt->as<std::uint64_t>();
    } else {
      flags[key] = opt->as<double>();
    }
  }
  return flags;
}

void emit(const Table& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    write_json(out, table);
  } else {
    write_csv(out, table);
  }
}

void write_outputs(const Table& table, OutputFormat format, const std::string& path,
                   const Json& manifest, std::ostream& out) {
  if (path.empty()) {
    emit(table, format, out);
    return;
  }
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FlagError("--out", "cannot write '" + path + "'");
    emit(table, format, f);
  }
  std::ofstream m(path + ".manifest.json", std::ios::binary);
  if (!m) throw FlagError("--out", "cannot write manifest next to '" + path + "'");
  m << manifest.dump(2) << "\n";
}

}  // namespace

SimulateResult simulate(const SimulateSettings& s) {
  SimulateResult result;
  result.table.columns = {std::string(to_string(s.sweep)), "scheduler", "mean_sum_rate",
                          "mean_ul_rate", "mean_dl_rate", "std_error", "fd_fraction",
                          "n_trials"};
  SweepSpec spec;
  spec.parameter = s.sweep;
  spec.values = s.values;
  spec.base = s.base;
  spec.pu_dbm_scale = s.pu_dbm_scale;
  spec.n_trials = s.trials;
  spec.seed = s.seed;
  RunOptions options;
  options.workers = s.workers;

  // stats[i][j]: sweep value i, scheduler j
  std::vector<std::vector<TrialStats>> stats(s.values.size());
  if (s.coupled) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const auto config = config_from_db(budget_at(spec, s.values[i]));
      auto c = run_coupled(config, s.schedulers, s.trials, derive_seed(s.seed, i), options);
      result.dominance_violations += c.dominance_violations;
      stats[i] = std::move(c.per_scheduler);
    }
  } else {
    for (Scheduler sched : s.schedulers) {
      spec.scheduler = sched;
      const auto rows = run_sweep(spec, options);
      for (std::size_t i = 0; i < rows.size(); ++i) stats[i].push_back(rows[i].stats);
    }
  }

  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const Cell value = s.sweep == SweepParameter::KUsers
                           ? Cell{static_cast<std::int64_t>(s.values[i])}
                           : Cell{s.values[i]};
    for (std::size_t j = 0; j < s.schedulers.size(); ++j) {
      const auto& t = stats[i][j];
      result.table.rows.push_back({value, std::string(to_string(s.schedulers[j])),
                                   t.mean_sum_rate, t.mean_ul_rate, t.mean_dl_rate, t.std_error,
                                   t.fd_fraction, t.n_trials});
    }
  }
  return result;
}

Table analyze(const AnalyzeSettings& s) {
  using namespace analysis;
  const auto p = AnalyticalParams::from_config(config_from_db(s.base));
  Table table;
  table.columns = {"quantity",  "k_u",     "k_d",             "closed_form",    "quadrature",
                   "abs_diff", "flagged", "asymptotic_nats", "asymptotic_bits"};

  const Cdf ul = [&](double x) { return cdf_sinr_ul(x, p); };
  const Cdf dl_a1 = [&](double x) { return cdf_sinr_dl_a1(x, p); };
  const Cdf dl_a2 = [&](double x) { return cdf_sinr_dl_a2(x, p); };
  const Cdf no_dl = [](double) { return 1.0; };

  if (s.asymptotic) {
    // Reference is the exact closed form; quadrature at large K is impractical.
    const auto closed = avg_rate_a1(p);
    const auto asym = asymptotic_rate_a1(p);
    table.rows.push_back({std::string("asymptotic_rate_a1"), static_cast<std::int64_t>(p.k_u),
                          static_cast<std::int64_t>(p.k_d), closed.value, Cell{}, Cell{},
                          closed.flagged, asym.nats, asym.bits});
    return table;
  }

  ClosedFormValue closed;
  double quad = 0.0;
  std::string quantity;
  switch (s.target) {
    case AnalyzeTarget::A1:
      closed = avg_rate_a1(p);
      quad = avg_rate_integral(ul, dl_a1);
      quantity = "avg_rate_a1";
      break;
    case AnalyzeTarget::A2:
      closed = avg_rate_a2(p);
      quad = avg_rate_integral(ul, dl_a2);
      quantity = "avg_rate_a2";
      break;
    case AnalyzeTarget::Ul:
      closed = avg_rate_ul_closed(p);
      quad = avg_rate_integral(ul, no_dl);
      quantity = "avg_rate_ul";
      break;
  }
  table.rows.push_back({quantity, static_cast<std::int64_t>(p.k_u),
                        static_cast<std::int64_t>(p.k_d), closed.value, quad,
                        std::abs(closed.value - quad), closed.flagged, Cell{}, Cell{}});
  return table;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Full-duplex user scheduling: simulation, closed-form analysis, validation",
               "fdsched"};
  app.set_version_flag("--version", std::string(kVersion) + " (" + kGitDescribe + ")");
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo sweep, one CSV row per point");
  LinkFlags sim_link;
  sim_link.add(sim);
  std::string preset, scheduler, sweep, values;
  double pu_scale = 0, trials = 0, workers = 0;
  std::uint64_t seed = 0;
  auto& sb = sim_link.bound;
  sb.emplace_back(sim->add_option("--preset", preset, "fig2, fig3 or fig4"), "preset");
  sb.emplace_back(sim->add_option("--scheduler", scheduler,
                                  "comma list of a1,a2,a3,a1-opa,a2-opa,a3-opa,es-fd,"
                                  "es-fdhd,hd-tdd"),
                  "scheduler");
  sb.emplace_back(sim->add_option("--sweep", sweep, "p0_dbm, si_cancellation_db or k_users"),
                  "sweep");
  sb.emplace_back(sim->add_option("--values", values, "comma list of sweep values"), "values");
  sb.emplace_back(sim->add_option("--pu-dbm-scale", pu_scale, "pu_dbm = scale * p0_dbm"),
                  "pu_dbm_scale");
  sb.emplace_back(sim->add_option("--trials", trials, "trials per point (default 1e5)"),
                  "trials");
  sb.emplace_back(sim->add_option("--seed", seed, "run seed"), "seed");
  sb.emplace_back(sim->add_option("--workers", workers, "worker threads, 0 = all cores"),
                  "workers");
  sb.emplace_back(sim->add_flag("--coupled", "all schedulers on shared draws, with "
                                             "per-realization dominance checks"),
                  "coupled");

  auto* ana = app.add_subcommand("analyze", "closed-form average rates against quadrature");
  LinkFlags ana_link;
  ana_link.add(ana);
  std::string alg;
  double k = 0;
  auto& ab = ana_link.bound;
  ab.emplace_back(ana->add_option("--alg", alg, "a1, a2 or ul"), "alg");
  ab.emplace_back(ana->add_flag("--asymptotic", "also evaluate the large-K growth law"),
                  "asymptotic");
  ab.emplace_back(ana->add_option("--k", k, "K_D = K_U for --asymptotic"), "k");

  auto* val = app.add_subcommand("validate", "run the acceptance checks");
  bool quick = false;
  std::string fault;
  int val_workers = 0;
  val->add_flag("--quick", quick, "reduced sample sizes");
  val->add_option("--inject-fault", fault, "corrupt a kernel on purpose (xi)")
      ->check(CLI::IsMember({"xi"}));
  val->add_option("--workers", val_workers, "worker threads, 0 = all cores")
      ->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (sim->parsed()) {
      const Json file =
          sim_link.config.empty() ? Json::object() : load_config_file(sim_link.config);
      const Json resolved = merge_layers(simulate_defaults(), file, collect(sb));
      const auto settings = parse_simulate(resolved);
      const auto result = simulate(settings);
      write_outputs(result.table, settings.format, sim_link.out,
                    make_manifest("simulate", resolved, settings.seed), out);
      if (result.dominance_violations > 0) {
        err << "error: " << result.dominance_violations
            << " per-realization dominance violations\n";
        return kExitNumerical;
      }
      return kExitOk;
    }
    if (ana->parsed()) {
      const Json file =
          ana_link.config.empty() ? Json::object() : load_config_file(ana_link.config);
      const Json resolved = merge_layers(analyze_defaults(), file, collect(ab));
      const auto settings = parse_analyze(resolved);
      write_outputs(analyze(settings), settings.format, ana_link.out,
                    make_manifest("analyze", resolved, 0), out);
      return kExitOk;
    }
    ValidationOptions options;
    options.quick = quick;
    options.workers = val_workers;
    options.inject_xi_fault = fault == "xi";
    const auto results = run_validation(options, &err);
    print_results(out, results);
    int code = kExitOk;
    for (const auto& r : results) {
      if (!r.passed) {
        err << "FAILED: criterion " << r.id << " (" << r.name << ")\n";
        code = kExitFailed;
      }
    }
    return code;
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace fdsched::cli
