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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

using namespace fdsched;
using namespace fdsched::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fdsched");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("fdsched_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("real formatting round-trips") {
  for (double x : {0.1, 1.0 / 3, 2.5401700595374, 1e-300, -7e22, 0.0, 123456789.0}) {
    CHECK(std::strtod(format_real(x).c_str(), nullptr) == x);
  }
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("CSV output") {
  Table t{{"name", "x", "n", "ok", "empty"},
          {{std::string("plain"), 0.5, std::int64_t{3}, true, Cell{}},
           {std::string("with,comma \"q\""), -1.0, std::int64_t{-2}, false, Cell{}}}};
  std::ostringstream s;
  write_csv(s, t);
  CHECK(s.str() ==
        "name,x,n,ok,empty\r\n"
        "plain,0.5,3,true,\r\n"
        "\"with,comma \"\"q\"\"\",-1,-2,false,\r\n");
}

TEST_CASE("JSON output") {
  Table t{{"a", "b"}, {{0.25, Cell{}}, {std::string("x"), std::int64_t{4}}}};
  std::ostringstream s;
  write_json(s, t);
  const auto j = Json::parse(s.str());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["a"] == 0.25);
  CHECK(j[0]["b"].is_null());
  CHECK(j[1]["a"] == "x");
  CHECK(j[1]["b"] == 4);
}

TEST_CASE("presets resolve to the documented sweeps") {
  auto s = parse_simulate(merge_layers(simulate_defaults(), Json::object(), {{"preset", "fig2"}}));
  CHECK(s.sweep == SweepParameter::P0Dbm);
  CHECK(s.values.size() == 15);
  CHECK(s.values.front() == -40.0);
  CHECK(s.values.back() == 30.0);
  CHECK(s.pu_dbm_scale == 0.95);
  CHECK(s.schedulers.size() == 6);

  s = parse_simulate(merge_layers(simulate_defaults(), Json::object(), {{"preset", "fig3"}}));
  CHECK(s.sweep == SweepParameter::SiCancellationDb);
  CHECK(s.values.front() == 40.0);
  CHECK(s.values.back() == 120.0);
  CHECK(s.base.p0_dbm == 24.0);
  CHECK(s.base.pu_dbm == 23.0);

  s = parse_simulate(merge_layers(simulate_defaults(), Json::object(), {{"preset", "fig4"}}));
  CHECK(s.sweep == SweepParameter::KUsers);
  CHECK(s.values.size() == 10);
  CHECK(s.trials == 100000);

  CHECK_THROWS_AS(preset_layer("fig9"), FlagError);
}

TEST_CASE("flags override the config file which overrides the preset") {
  const Json file = {{"preset", "fig3"}, {"trials", 500}, {"seed", 9}, {"si_db", 70.0}};
  const Json flags = {{"seed", 11}};
  const auto s = parse_simulate(merge_layers(simulate_defaults(), file, flags));
  CHECK(s.trials == 500);
  CHECK(s.seed == 11);
  CHECK(s.sweep == SweepParameter::SiCancellationDb);

  bool thrown = false;
  try {
    merge_layers(simulate_defaults(), {{"bogus", 1}}, Json::object());
  } catch (const FlagError& e) {
    thrown = true;
    CHECK(e.flag() == "--config");
  }
  CHECK(thrown);
}

TEST_CASE("manifest records the resolved settings") {
  const Json resolved = merge_layers(simulate_defaults(), Json::object(), Json::object());
  const auto m = make_manifest("simulate", resolved, 1);
  CHECK(m["command"] == "simulate");
  CHECK(m["seed"] == 1);
  CHECK(m["config"]["trials"] == 100000);
  CHECK(m.contains("version"));
  CHECK(m.contains("timestamp"));
}

TEST_CASE("bad flags exit with a usage error naming the flag") {
  auto r = invoke({"simulate", "--trials", "0", "--values", "80", "--sweep", "si_cancellation_db"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--trials") != std::string::npos);

  r = invoke({"simulate", "--trials", "abc"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--trials") != std::string::npos);

  r = invoke({"simulate", "--scheduler", "a9", "--preset", "fig3", "--trials", "10"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--scheduler") != std::string::npos);

  CHECK(invoke({"nonsense"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"analyze", "--alg", "a7"}).code == kExitUsage);
  CHECK(invoke({"--version"}).code == kExitOk);
}

TEST_CASE("simulate writes one row per point and scheduler") {
  const auto r = invoke({"simulate", "--sweep", "si_cancellation_db", "--values", "70,90",
                      "--scheduler", "a1,hd-tdd", "--trials", "200", "--seed", "3"});
  REQUIRE(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 5);
  CHECK(all[0] ==
        "si_cancellation_db,scheduler,mean_sum_rate,mean_ul_rate,mean_dl_rate,std_error,"
        "fd_fraction,n_trials\r");
  CHECK(all[1].rfind("70,a1,", 0) == 0);
  CHECK(all[2].rfind("70,hd-tdd,", 0) == 0);
  CHECK(all[4].rfind("90,hd-tdd,", 0) == 0);

  const auto j = invoke({"simulate", "--sweep", "k_users", "--values", "3", "--scheduler",
                      "es-fdhd", "--trials", "100", "--format", "json", "--coupled"});
  REQUIRE(j.code == kExitOk);
  const auto rows = Json::parse(j.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["k_users"] == 3);
  CHECK(rows[0]["n_trials"] == 100);
}

TEST_CASE("analyze compares closed form and quadrature") {
  auto r = invoke({"analyze", "--alg", "a1", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  auto row = Json::parse(r.out)[0];
  CHECK(row["quantity"] == "avg_rate_a1");
  CHECK(row["abs_diff"].get<double>() <= 1e-6 * row["closed_form"].get<double>());
  CHECK(row["flagged"] == false);

  r = invoke({"analyze", "--alg", "a2", "--p0-dbm", "10", "--pu-dbm", "10", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  row = Json::parse(r.out)[0];
  CHECK(row["flagged"] == true);
  CHECK(row["abs_diff"].get<double>() <= 1e-5 * row["closed_form"].get<double>());

  r = invoke({"analyze", "--asymptotic", "--k", "64", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  row = Json::parse(r.out)[0];
  CHECK(row["k_u"] == 64);
  CHECK(row["quadrature"].is_null());
  CHECK(row["asymptotic_bits"].get<double>() > 0.0);
}

TEST_CASE("output files come with a manifest that replays the run") {
  const auto dir = scratch_dir("replay");
  const auto first = (dir / "first.csv").string();
  const auto again = (dir / "again.csv").string();
  REQUIRE(invoke({"simulate", "--preset", "fig3", "--values", "60,100", "--trials", "300",
               "--seed", "5", "--workers", "1", "--out", first})
              .code == kExitOk);
  const auto manifest = Json::parse(slurp(first + ".manifest.json"));
  CHECK(manifest["seed"] == 5);
  CHECK(manifest["config"]["preset"] == "fig3");
  REQUIRE(invoke({"simulate", "--config", first + ".manifest.json", "--workers", "2", "--out", again})
              .code == kExitOk);
  CHECK(slurp(first) == slurp(again));
  fs::remove_all(dir);
}
