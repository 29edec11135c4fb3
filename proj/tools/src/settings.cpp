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

#include "settings.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "fdsched/version.hpp"

namespace fdsched::cli {

namespace {

std::string flag_of(const std::string& key) {
  std::string flag = "--" + key;
  for (char& c : flag) {
    if (c == '_') c = '-';
  }
  return flag;
}

double get_real(const Json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw FlagError(flag_of(key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FlagError(flag_of(key), "must be finite");
  return x;
}

std::int64_t get_integer(const Json& j, const std::string& key, std::int64_t lo) {
  const auto& v = j.at(key);
  if (v.is_number_integer()) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() >
                                      static_cast<std::uint64_t>(
                                          std::numeric_limits<std::int64_t>::max())) {
      throw FlagError(flag_of(key), "out of range");
    }
    const auto x = v.get<std::int64_t>();
    if (x < lo) throw FlagError(flag_of(key), "must be >= " + std::to_string(lo));
    return x;
  }
  if (v.is_number_float()) {
    // 1e5 written in scientific notation
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) {
      if (x < static_cast<double>(lo)) {
        throw FlagError(flag_of(key), "must be >= " + std::to_string(lo));
      }
      return static_cast<std::int64_t>(x);
    }
  }
  throw FlagError(flag_of(key), "expected an integer");
}

int get_count(const Json& j, const std::string& key, int lo) {
  const auto x = get_integer(j, key, lo);
  if (x > std::numeric_limits<int>::max()) throw FlagError(flag_of(key), "out of range");
  return static_cast<int>(x);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<Scheduler> get_schedulers(const Json& j) {
  std::vector<std::string> names;
  const auto& v = j.at("scheduler");
  if (v.is_string()) {
    names = split_list(v.get<std::string>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_string()) throw FlagError("--scheduler", "expected scheduler names");
      names.push_back(e.get<std::string>());
    }
  } else {
    throw FlagError("--scheduler", "expected a list of scheduler names");
  }
  if (names.empty()) throw FlagError("--scheduler", "no scheduler given");
  std::vector<Scheduler> out;
  for (const auto& n : names) {
    const auto s = parse_scheduler(n);
    if (!s) throw FlagError("--scheduler", "unknown scheduler '" + n + "'");
    out.push_back(*s);
  }
  return out;
}

std::vector<double> get_values(const Json& j) {
  std::vector<double> out;
  const auto& v = j.at("values");
  if (v.is_string()) {
    for (const auto& item : split_list(v.get<std::string>())) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) throw FlagError("--values", "not a number: '" + item + "'");
      out.push_back(x);
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) throw FlagError("--values", "expected numbers");
      out.push_back(e.get<double>());
    }
  } else {
    throw FlagError("--values", "expected a list of numbers");
  }
  return out;
}

OutputFormat get_format(const Json& j) {
  const auto& v = j.at("format");
  if (v == "csv") return OutputFormat::Csv;
  if (v == "json") return OutputFormat::Json;
  throw FlagError("--format", "expected csv or json");
}

bool get_bool(const Json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_boolean()) throw FlagError(flag_of(key), "expected true or false");
  return v.get<bool>();
}

LinkBudget get_budget(const Json& j) {
  LinkBudget b;
  b.p0_dbm = get_real(j, "p0_dbm");
  b.pu_dbm = get_real(j, "pu_dbm");
  b.si_cancellation_db = get_real(j, "si_db");
  b.noise_figure_bs_db = get_real(j, "nf_bs_db");
  b.noise_figure_mt_db = get_real(j, "nf_mt_db");
  b.bandwidth_hz = get_real(j, "bandwidth_hz");
  if (!(b.bandwidth_hz > 0.0)) throw FlagError("--bandwidth-hz", "must be > 0");
  b.k_d = get_count(j, "kd", 1);
  b.k_u = get_count(j, "ku", 1);
  return b;
}

Json link_defaults() {
  const LinkBudget b;
  return {{"p0_dbm", b.p0_dbm},
          {"pu_dbm", b.pu_dbm},
          {"si_db", b.si_cancellation_db},
          {"nf_bs_db", b.noise_figure_bs_db},
          {"nf_mt_db", b.noise_figure_mt_db},
          {"bandwidth_hz", b.bandwidth_hz},
          {"kd", b.k_d},
          {"ku", b.k_u},
          {"format", "csv"}};
}

Json range(double first, double last, double step) {
  Json out = Json::array();
  const int n = static_cast<int>(std::lround((last - first) / step));
  for (int i = 0; i <= n; ++i) out.push_back(first + i * step);
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Json simulate_defaults() {
  Json j = link_defaults();
  j["preset"] = nullptr;
  j["scheduler"] = Json::array({"a1"});
  j["sweep"] = nullptr;
  j["values"] = Json::array();
  j["pu_dbm_scale"] = nullptr;
  j["trials"] = 100000;
  j["seed"] = 1;
  j["workers"] = 0;
  j["coupled"] = false;
  return j;
}

Json analyze_defaults() {
  Json j = link_defaults();
  j["alg"] = "a1";
  j["asymptotic"] = false;
  j["k"] = nullptr;
  return j;
}

Json preset_layer(const std::string& name) {
  if (name == "fig2") {
    return {{"sweep", "p0_dbm"},
            {"values", range(-40.0, 30.0, 5.0)},
            {"pu_dbm_scale", 0.95},
            {"kd", 5},
            {"ku", 5},
            {"scheduler", {"a1", "a2", "a3", "es-fd", "es-fdhd", "hd-tdd"}}};
  }
  if (name == "fig3") {
    return {{"sweep", "si_cancellation_db"},
            {"values", range(40.0, 120.0, 10.0)},
            {"p0_dbm", 24.0},
            {"pu_dbm", 23.0},
            {"scheduler", {"a1-opa", "a2-opa", "a3-opa", "hd-tdd", "es-fdhd"}}};
  }
  if (name == "fig4") {
    return {{"sweep", "k_users"},
            {"values", range(2.0, 20.0, 2.0)},
            {"si_db", 20.0},
            {"scheduler", {"a1", "a2", "a3", "a1-opa", "a2-opa", "a3-opa", "es-fdhd"}}};
  }
  throw FlagError("--preset", "unknown preset '" + name + "' (fig2, fig3, fig4)");
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FlagError("--config", "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FlagError("--config", std::string("invalid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("config")) j = j["config"];
  if (!j.is_object()) throw FlagError("--config", "expected a JSON object");
  return j;
}

Json merge_layers(const Json& defaults, const Json& file, const Json& flags) {
  for (const Json* layer : {&file, &flags}) {
    for (const auto& [key, value] : layer->items()) {
      if (!defaults.contains(key)) {
        throw FlagError(layer == &file ? "--config" : flag_of(key), "unknown key '" + key + "'");
      }
    }
  }
  Json out = defaults;
  Json preset = nullptr;
  if (flags.contains("preset") && !flags["preset"].is_null()) {
    preset = flags["preset"];
  } else if (file.contains("preset")) {
    preset = file["preset"];
  }
  if (!preset.is_null()) {
    if (!preset.is_string()) throw FlagError("--preset", "expected a preset name");
    out.update(preset_layer(preset.get<std::string>()));
  }
  out.update(file);
  out.update(flags);
  return out;
}

SimulateSettings parse_simulate(const Json& j) {
  SimulateSettings s;
  if (!j.at("preset").is_null()) s.preset = j["preset"].get<std::string>();
  s.base = get_budget(j);
  s.schedulers = get_schedulers(j);
  s.values = get_values(j);
  if (j.at("sweep").is_null()) {
    s.sweep = SweepParameter::P0Dbm;
    if (!s.values.empty()) throw FlagError("--values", "needs --sweep");
  } else {
    const auto p = j["sweep"].is_string()
                       ? parse_sweep_parameter(j["sweep"].get<std::string>())
                       : std::nullopt;
    if (!p) throw FlagError("--sweep", "expected p0_dbm, si_cancellation_db or k_users");
    s.sweep = *p;
  }
  if (!j.at("pu_dbm_scale").is_null()) {
    s.pu_dbm_scale = get_real(j, "pu_dbm_scale");
    if (s.sweep != SweepParameter::P0Dbm) s.base.pu_dbm = *s.pu_dbm_scale * s.base.p0_dbm;
  }
  if (s.values.empty()) {
    switch (s.sweep) {
      case SweepParameter::P0Dbm: s.values = {s.base.p0_dbm}; break;
      case SweepParameter::SiCancellationDb: s.values = {s.base.si_cancellation_db}; break;
      case SweepParameter::KUsers:
        if (s.base.k_u != s.base.k_d) throw FlagError("--sweep", "k_users needs --kd == --ku");
        s.values = {static_cast<double>(s.base.k_d)};
        break;
    }
  }
  s.trials = get_integer(j, "trials", 1);
  const auto& seed = j.at("seed");
  if (seed.is_number_unsigned()) {
    s.seed = seed.get<std::uint64_t>();
  } else {
    s.seed = static_cast<std::uint64_t>(get_integer(j, "seed", 0));
  }
  s.workers = get_count(j, "workers", 0);
  s.coupled = get_bool(j, "coupled");
  s.format = get_format(j);

  SweepSpec probe;
  probe.parameter = s.sweep;
  probe.values = s.values;
  try {
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw FlagError("--values", e.what());
  }
  for (double v : s.values) {
    SweepSpec at = probe;
    at.base = s.base;
    at.pu_dbm_scale = s.pu_dbm_scale;
    try {
      config_from_db(budget_at(at, v)).validate();
    } catch (const std::invalid_argument& e) {
      throw FlagError("--values", e.what());
    }
  }
  return s;
}

AnalyzeSettings parse_analyze(const Json& j) {
  AnalyzeSettings s;
  const auto& alg = j.at("alg");
  if (alg == "a1") {
    s.target = AnalyzeTarget::A1;
  } else if (alg == "a2") {
    s.target = AnalyzeTarget::A2;
  } else if (alg == "ul") {
    s.target = AnalyzeTarget::Ul;
  } else {
    throw FlagError("--alg", "expected a1, a2 or ul");
  }
  s.asymptotic = get_bool(j, "asymptotic");
  s.base = get_budget(j);
  if (!j.at("k").is_null()) s.base.k_u = s.base.k_d = get_count(j, "k", 1);
  if (s.asymptotic) {
    if (s.target != AnalyzeTarget::A1) throw FlagError("--asymptotic", "only defined for a1");
    if (s.base.k_u < 2 || s.base.k_d < 2) throw FlagError("--k", "asymptotic law needs K >= 2");
  }
  s.format = get_format(j);
  return s;
}

Json make_manifest(const std::string& command, const Json& resolved, std::uint64_t seed) {
  return {{"tool", "fdsched"},
          {"command", command},
          {"version", std::string(kVersion)},
          {"git_describe", std::string(kGitDescribe)},
          {"seed", seed},
          {"timestamp", utc_timestamp()},
          {"config", resolved}};
}

}  // namespace fdsched::cli
