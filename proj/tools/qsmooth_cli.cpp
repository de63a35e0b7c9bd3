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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "qsmooth/errors.hpp"
#include "qsmooth/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for smoothed estimates of a continuously monitored qubit"};

  std::string config_path;
  app.add_option("-c,--config", config_path, "Flat key = value configuration file")->check(CLI::ExistingFile);

  // Command-line values override the configuration file.
  std::map<std::string, std::string> overrides;
  auto add_override = [&](const std::string& flags, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(
        flags, [&overrides, key](const std::string& value) { overrides[key] = value; }, help);
  };
  add_override("-s,--scenario", "scenario", "single | ensemble | dual | dual_sweep");
  add_override("--omega", "omega", "Rabi angular frequency (default 2*pi)");
  add_override("--tau", "tau", "Collapse timescale of the sigma_z monitor");
  add_override("--tau-x", "tau_x", "Collapse timescale of the sigma_x monitor (dual)");
  add_override("--dt", "dt", "Time step");
  add_override("--duration", "duration", "Total monitoring time T");
  add_override("-n,--realizations", "realizations", "Ensemble size");
  add_override("--seed", "seed", "Master seed");
  add_override("--initial", "initial", "Initial Bloch vector x,y,z");
  add_override("--ratios", "ratios", "Comma-separated tau_x/tau_z values (dual_sweep)");
  add_override("-j,--threads", "threads", "Worker threads (default: $QSMOOTH_THREADS or all cores)");
  add_override("-o,--out", "out", "Output CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    qsmooth::ScenarioConfig config;
    if (!config_path.empty()) config = qsmooth::load_config_file(config_path);
    for (const auto& [key, value] : overrides) qsmooth::apply_setting(config, key, value);
    config.validate();

    if (config.output_path.empty()) {
      qsmooth::run_scenario(config, std::cout);
    } else {
      std::ofstream out(config.output_path, std::ios::binary);
      if (!out) throw qsmooth::ConfigError("cannot open output file '" + config.output_path + "'");
      qsmooth::run_scenario(config, out);
    }
  } catch (const qsmooth::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
