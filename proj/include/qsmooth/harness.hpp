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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qsmooth/dual_observer.hpp"
#include "qsmooth/metrics.hpp"
#include "qsmooth/smoother.hpp"
#include "qsmooth/trajectory.hpp"

namespace qsmooth {

enum class Scenario { Single, Ensemble, Dual, DualSweep };

Scenario parse_scenario(std::string_view name);
const char* scenario_name(Scenario scenario);

/// Everything needed to reproduce one run.
///
/// Times may be given in any unit consistent with `omega`; `normalized()`
/// rescales them to units of the Rabi period (omega = 2 pi).
struct ScenarioConfig {
  Scenario scenario = Scenario::Single;
  double omega = 2.0 * std::numbers::pi;
  double tau = 0.1;
  double tau_x = 2.5;  ///< dual scenarios only
  double dt = 0.01;
  double duration = 5.0;
  std::size_t realizations = 10000;
  std::uint64_t master_seed = 1;
  std::array<double, 3> initial_bloch{0.0, 0.0, 1.0};
  std::string output_path;  ///< empty: standard output
  std::vector<double> ratios{5.0, 10.0, 15.0, 25.0, 50.0};  ///< dual_sweep only
  std::size_t threads = 0;  ///< 0: QSMOOTH_THREADS, else hardware concurrency

  /// Number of steps duration / dt; throws ConfigError unless it is a
  /// positive integer.
  std::size_t steps() const;
  /// Throws ConfigError on any invariant violation.
  void validate() const;
  ScenarioConfig normalized() const;
  QubitStated initial_state() const;
};

/// Applies one `key = value` setting. Keys mirror the field names; `scenario`,
/// `seed`, `out` and `initial` ("x,y,z") are accepted as aliases.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` text; `#` starts a comment.
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base = {});

/// `#`-prefixed block echoing the resolved configuration.
void write_config_header(std::ostream& os, const ScenarioConfig& config);

struct SingleResult {
  TrajectoryRecord record;
  EstimateSeries series;
};

struct RealizationResult {
  double q = 0.0;
  double ln_r = 0.0;
  double scaled_ln_r = 0.0;  ///< (2 dt / T) ln R
  double mse_smoothed = 0.0;
  double mse_expectation = 0.0;
  std::size_t anomalous = 0;
};

struct EnsembleSummary {
  std::size_t realizations = 0;
  double frac_q_positive = 0.0;
  double frac_ln_r_positive = 0.0;
  double mean_q = 0.0;
  double mean_scaled_ln_r = 0.0;
  double mean_mse_smoothed = 0.0;
  double median_relative_gap = 0.0;  ///< median |scaled ln R - Q| / |Q|
  double correlation = 0.0;          ///< Pearson(Q, scaled ln R)
  std::size_t anomalous = 0;
};

struct EnsembleResult {
  std::vector<RealizationResult> rows;
  EnsembleSummary summary;
};

struct DualSummary {
  std::size_t realizations = 0;
  double frac_ignorant_expectation = 0.0;
  double frac_ignorant_smoothed = 0.0;
  double frac_omniscient_smoothed = 0.0;
  std::size_t anomalous = 0;
};

struct DualEnsembleResult {
  std::vector<DualComparison> rows;
  DualSummary summary;
};

SingleResult simulate_single(const ScenarioConfig& config);
/// One scored single-monitor realization; the unit of work of an ensemble.
RealizationResult simulate_realization(const QubitStated& initial, double omega, const MeasurementModeld& model,
                                       std::size_t steps, std::uint64_t master_seed, std::uint64_t index);
EnsembleSummary summarize(std::span<const RealizationResult> rows);
EnsembleResult simulate_ensemble(const ScenarioConfig& config);
DualEnsembleResult simulate_dual(const ScenarioConfig& config);
std::vector<SweepRow> simulate_dual_sweep(const ScenarioConfig& config);

/// Per-step trace `t,r,z,z_w,z_c,z_S,flag`.
void run_single(const ScenarioConfig& config, std::ostream& os);
/// Rows `realization,Q,scaled_lnR,anomalous` followed by a summary block.
void run_ensemble(const ScenarioConfig& config, std::ostream& os);
/// Rows `realization,Q_xZ,Q_xSZ,Q_xS` followed by a summary block.
void run_dual(const ScenarioConfig& config, std::ostream& os);
/// Rows `ratio,frac_xZ,frac_xSZ,frac_xS,n`, one per requested ratio.
void run_dual_sweep(const ScenarioConfig& config, std::ostream& os);
/// Dispatches on `config.scenario`.
void run_scenario(const ScenarioConfig& config, std::ostream& os);

}  // namespace qsmooth
