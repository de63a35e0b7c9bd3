// Copyright 2026 The qsmooth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qsmooth/errors.hpp"
#include "qsmooth/harness.hpp"

using namespace qsmooth;

namespace {

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l[0] != '#') out.push_back(l);
  }
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

std::string render(const ScenarioConfig& config) {
  std::ostringstream os;
  run_scenario(config, os);
  return os.str();
}

}  // namespace

TEST_CASE("parse_config reads settings and rejects bad input") {
  const auto c = parse_config(
      "# comment\n"
      "scenario = ensemble\n"
      "tau = 2   # trailing\n"
      "dt=0.01\n"
      "duration = 50\n"
      "realizations = 7\n"
      "seed = 11\n"
      "initial = 0, 0, -1\n"
      "ratios = 5, 10\n");
  CHECK(c.scenario == Scenario::Ensemble);
  CHECK(c.tau == 2.0);
  CHECK(c.duration == 50.0);
  CHECK(c.realizations == 7);
  CHECK(c.master_seed == 11);
  CHECK(c.initial_bloch[2] == -1.0);
  CHECK(c.ratios == std::vector<double>{5.0, 10.0});
  CHECK(c.steps() == 5000);

  CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("tau\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("tau = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = triple\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("initial = 1, 0\n"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/qsmooth.cfg"), ConfigError);
}

TEST_CASE("validate enforces the configuration invariants") {
  ScenarioConfig c;
  c.duration = 2.5;
  c.dt = 0.3;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ScenarioConfig{};
  c.tau = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ScenarioConfig{};
  c.initial_bloch = {1, 1, 0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ScenarioConfig{};
  c.scenario = Scenario::Dual;
  c.tau_x = 0.05;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ScenarioConfig{};
  c.scenario = Scenario::DualSweep;
  c.ratios = {10, 5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.ratios = {1, 5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_NOTHROW(ScenarioConfig{}.validate());
}

TEST_CASE("normalized rescales times to Rabi periods") {
  ScenarioConfig c;
  c.omega = 1.0;
  c.tau = 0.5;
  c.dt = 0.1;
  c.duration = 10.0;
  const auto n = c.normalized();
  const double period = 2 * std::numbers::pi;
  CHECK(n.omega == doctest::Approx(period));
  CHECK(n.tau == doctest::Approx(0.5 / period));
  CHECK(n.dt == doctest::Approx(0.1 / period));
  CHECK(n.steps() == c.steps());
  c.omega = 0.0;
  CHECK(c.normalized().tau == 0.5);
}

TEST_CASE("single scenario: undriven eigenstate gives constant columns") {
  ScenarioConfig c;
  c.omega = 0.0;
  c.dt = 0.01;
  c.duration = 1.0;
  c.initial_bloch = {0, 0, -1};
  const auto lines = data_lines(render(c));
  REQUIRE(lines.size() == 101);
  CHECK(lines[0] == "t,r,z,z_w,z_c,z_S,flag");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i]);
    REQUIRE(f.size() == 7);
    CHECK(std::stod(f[0]) == doctest::Approx(0.01 * i));
    CHECK(std::stod(f[2]) == doctest::Approx(-1.0));
    CHECK(std::stod(f[3]) == doctest::Approx(-1.0));
    CHECK(std::stod(f[4]) == doctest::Approx(1.0));
    CHECK(std::stod(f[5]) == doctest::Approx(-1.0));
    CHECK(f[6] == "0");
  }
  CHECK(render(c) == render(c));
}

TEST_CASE("ensemble and dual output schemas") {
  ScenarioConfig c;
  c.scenario = Scenario::Ensemble;
  c.duration = 1.0;
  c.realizations = 5;
  auto lines = data_lines(render(c));
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "realization,Q,scaled_lnR,anomalous");
  CHECK(split(lines[5])[0] == "4");
  const std::string text = render(c);
  CHECK(text.find("# frac_Q_positive = ") != std::string::npos);
  CHECK(text.find("# median_relative_gap = ") != std::string::npos);

  c.scenario = Scenario::Dual;
  lines = data_lines(render(c));
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "realization,Q_xZ,Q_xSZ,Q_xS");
  CHECK(render(c).find("# frac_xSZ = ") != std::string::npos);

  c.scenario = Scenario::DualSweep;
  c.ratios = {5, 15, 50};
  lines = data_lines(render(c));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "ratio,frac_xZ,frac_xSZ,frac_xS,n");
  CHECK(split(lines[1])[0] == "5");
  CHECK(split(lines[2])[0] == "15");
  CHECK(split(lines[3])[0] == "50");
  CHECK(split(lines[3])[4] == "5");
}

TEST_CASE("output is independent of the thread count") {
  for (auto scenario : {Scenario::Ensemble, Scenario::Dual, Scenario::DualSweep}) {
    ScenarioConfig c;
    c.scenario = scenario;
    c.duration = 1.0;
    c.realizations = 24;
    c.master_seed = 77;
    c.threads = 1;
    const std::string serial = render(c);
    c.threads = 4;
    CHECK(render(c) == serial);
    c.threads = 8;
    CHECK(render(c) == serial);
  }
}

TEST_CASE("summarize") {
  std::vector<RealizationResult> rows(4);
  rows[0].q = 0.1;
  rows[0].scaled_ln_r = 0.1;
  rows[1].q = 0.2;
  rows[1].scaled_ln_r = 0.22;
  rows[2].q = -0.1;
  rows[2].scaled_ln_r = -0.1;
  rows[3].q = 0.3;
  rows[3].scaled_ln_r = 0.27;
  for (auto& r : rows) r.ln_r = 500 * r.scaled_ln_r;
  const auto s = summarize(rows);
  CHECK(s.realizations == 4);
  CHECK(s.frac_q_positive == 0.75);
  CHECK(s.frac_ln_r_positive == 0.75);
  CHECK(s.mean_q == doctest::Approx(0.125));
  CHECK(s.median_relative_gap == doctest::Approx(0.05));
  CHECK(s.correlation > 0.99);
}

TEST_CASE("dual scenario: vanishing X monitor leaves nothing to smooth") {
  ScenarioConfig c;
  c.scenario = Scenario::Dual;
  c.tau = 0.1;
  c.tau_x = 0.1 * 1e6;
  c.duration = 5.0;
  c.realizations = 30;
  const auto result = simulate_dual(c);
  for (const auto& row : result.rows) {
    CHECK(std::abs(row.q_ignorant_expectation) < 1e-3);
    CHECK(row.q_ignorant_smoothed == doctest::Approx(row.q_omniscient_smoothed).epsilon(1e-3));
  }
}
