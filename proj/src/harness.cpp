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

#include "qsmooth/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qsmooth/parallel.hpp"

namespace qsmooth {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += num(values[i]);
  }
  return out;
}

std::ostream& line(std::ostream& os, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) os << ',';
    os << f;
    first = false;
  }
  return os << '\n';
}

}  // namespace

Scenario parse_scenario(std::string_view name) {
  name = trim(name);
  if (name == "single") return Scenario::Single;
  if (name == "ensemble") return Scenario::Ensemble;
  if (name == "dual") return Scenario::Dual;
  if (name == "dual_sweep") return Scenario::DualSweep;
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

const char* scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::Single:
      return "single";
    case Scenario::Ensemble:
      return "ensemble";
    case Scenario::Dual:
      return "dual";
    case Scenario::DualSweep:
      return "dual_sweep";
  }
  return "?";
}

std::size_t ScenarioConfig::steps() const {
  if (!(dt > 0.0) || !(duration > 0.0)) throw ConfigError("dt and duration must be positive");
  const double ratio = duration / dt;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError("duration / dt = " + num(ratio) + " is not a positive integer");
  }
  return static_cast<std::size_t>(rounded);
}

void ScenarioConfig::validate() const {
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw ConfigError("omega must be finite and non-negative");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive");
  (void)steps();
  if (realizations == 0) throw ConfigError("realizations must be at least 1");
  const double norm = std::sqrt(initial_bloch[0] * initial_bloch[0] + initial_bloch[1] * initial_bloch[1] +
                                initial_bloch[2] * initial_bloch[2]);
  if (!(norm <= 1.0 + 1e-10)) throw ConfigError("initial Bloch vector is longer than 1");
  if (scenario == Scenario::Dual && !(tau_x > tau)) throw ConfigError("dual scenario requires tau_x > tau");
  if (scenario == Scenario::DualSweep) {
    if (ratios.empty()) throw ConfigError("dual_sweep needs at least one ratio");
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if (!(ratios[i] > 1.0)) throw ConfigError("sweep ratios must exceed 1");
      if (i > 0 && !(ratios[i] > ratios[i - 1])) throw ConfigError("sweep ratios must be strictly increasing");
    }
  }
}

ScenarioConfig ScenarioConfig::normalized() const {
  validate();
  ScenarioConfig out = *this;
  if (omega > 0.0) {
    const double rabi_period = 2.0 * std::numbers::pi / omega;
    out.omega = 2.0 * std::numbers::pi;
    out.tau = tau / rabi_period;
    out.tau_x = tau_x / rabi_period;
    out.dt = dt / rabi_period;
    out.duration = duration / rabi_period;
  }
  return out;
}

QubitStated ScenarioConfig::initial_state() const {
  try {
    return QubitStated::from_bloch(initial_bloch[0], initial_bloch[1], initial_bloch[2]);
  } catch (const InvalidState& e) {
    throw ConfigError(e.what());
  }
}

void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "scenario") {
    config.scenario = parse_scenario(value);
  } else if (key == "omega") {
    config.omega = parse_double(key, value);
  } else if (key == "tau" || key == "tau_z") {
    config.tau = parse_double(key, value);
  } else if (key == "tau_x") {
    config.tau_x = parse_double(key, value);
  } else if (key == "dt") {
    config.dt = parse_double(key, value);
  } else if (key == "duration") {
    config.duration = parse_double(key, value);
  } else if (key == "realizations") {
    config.realizations = parse_unsigned(key, value);
  } else if (key == "seed" || key == "master_seed") {
    config.master_seed = parse_unsigned(key, value);
  } else if (key == "initial" || key == "initial_bloch") {
    const auto v = parse_list(key, value);
    if (v.size() != 3) throw ConfigError("initial Bloch vector needs three components");
    config.initial_bloch = {v[0], v[1], v[2]};
  } else if (key == "out" || key == "output_path") {
    config.output_path = std::string(value);
  } else if (key == "ratios") {
    config.ratios = parse_list(key, value);
  } else if (key == "threads") {
    config.threads = parse_unsigned(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(base, raw.substr(0, eq), raw.substr(eq + 1));
  }
  return base;
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

void write_config_header(std::ostream& os, const ScenarioConfig& config) {
  os << "# qsmooth " << scenario_name(config.scenario) << " run (times in units of the Rabi period)\n";
  os << "# scenario = " << scenario_name(config.scenario) << '\n';
  os << "# omega = " << num(config.omega) << '\n';
  os << "# tau = " << num(config.tau) << '\n';
  if (config.scenario == Scenario::Dual) os << "# tau_x = " << num(config.tau_x) << '\n';
  if (config.scenario == Scenario::DualSweep) os << "# ratios = " << join(config.ratios) << '\n';
  os << "# dt = " << num(config.dt) << '\n';
  os << "# duration = " << num(config.duration) << '\n';
  os << "# steps = " << config.steps() << '\n';
  if (config.scenario != Scenario::Single) os << "# realizations = " << config.realizations << '\n';
  os << "# seed = " << config.master_seed << '\n';
  os << "# initial = " << join(config.initial_bloch) << '\n';
}

SingleResult simulate_single(const ScenarioConfig& raw) {
  const ScenarioConfig config = raw.normalized();
  const MeasurementModeld model(config.dt, config.tau, Axis::Z);
  RandomStream rng = RandomStream::for_realization(config.master_seed, 0);
  TrajectoryRecord record = forward_pass(config.initial_state(), config.omega, model, config.steps(), rng);
  const EffectSeries effects = backward_pass(record);
  EstimateSeries series = smooth_series(record, effects, model.observable());
  return {std::move(record), std::move(series)};
}

RealizationResult simulate_realization(const QubitStated& initial, double omega, const MeasurementModeld& model,
                                       std::size_t steps, std::uint64_t master_seed, std::uint64_t index) {
  RandomStream rng = RandomStream::for_realization(master_seed, index);
  const TrajectoryRecord record = forward_pass(initial, omega, model, steps, rng);
  const EffectSeries effects = backward_pass(record);
  const EstimateSeries series = smooth_series(record, effects, model.observable());
  const ComparisonResult c = compare_estimates(record, effects, series);
  RealizationResult out;
  out.q = c.q;
  out.ln_r = c.ln_r;
  out.scaled_ln_r = 2.0 * c.ln_r / static_cast<double>(steps);
  out.mse_smoothed = c.mse_alt;
  out.mse_expectation = c.mse_ref;
  out.anomalous = c.anomalous_count;
  return out;
}

EnsembleSummary summarize(std::span<const RealizationResult> rows) {
  EnsembleSummary s;
  s.realizations = rows.size();
  if (rows.empty()) return s;
  std::vector<double> q;
  std::vector<double> scaled;
  std::vector<double> gap;
  q.reserve(rows.size());
  scaled.reserve(rows.size());
  gap.reserve(rows.size());
  for (const auto& r : rows) {
    s.frac_q_positive += r.q > 0.0;
    s.frac_ln_r_positive += r.ln_r > 0.0;
    s.mean_q += r.q;
    s.mean_scaled_ln_r += r.scaled_ln_r;
    s.mean_mse_smoothed += r.mse_smoothed;
    s.anomalous += r.anomalous;
    q.push_back(r.q);
    scaled.push_back(r.scaled_ln_r);
    gap.push_back(std::abs(r.scaled_ln_r - r.q) / std::abs(r.q));
  }
  const double n = static_cast<double>(rows.size());
  s.frac_q_positive /= n;
  s.frac_ln_r_positive /= n;
  s.mean_q /= n;
  s.mean_scaled_ln_r /= n;
  s.mean_mse_smoothed /= n;
  s.median_relative_gap = median(gap);
  s.correlation = rows.size() > 1 ? pearson_correlation(q, scaled) : 0.0;
  return s;
}

EnsembleResult simulate_ensemble(const ScenarioConfig& raw) {
  const ScenarioConfig config = raw.normalized();
  const MeasurementModeld model(config.dt, config.tau, Axis::Z);
  const QubitStated initial = config.initial_state();
  const std::size_t steps = config.steps();
  EnsembleResult out;
  out.rows.resize(config.realizations);
  parallel_for(config.realizations, resolve_thread_count(config.threads), [&](std::size_t i) {
    out.rows[i] = simulate_realization(initial, config.omega, model, steps, config.master_seed, i);
  });
  out.summary = summarize(out.rows);
  return out;
}

DualEnsembleResult simulate_dual(const ScenarioConfig& raw) {
  const ScenarioConfig config = raw.normalized();
  const DualModel dual(config.omega, config.dt, config.tau, config.tau_x, config.steps());
  const QubitStated initial = config.initial_state();
  DualEnsembleResult out;
  out.rows.resize(config.realizations);
  parallel_for(config.realizations, resolve_thread_count(config.threads), [&](std::size_t i) {
    out.rows[i] = run_dual_realization(initial, dual, config.master_seed, i);
  });
  auto& s = out.summary;
  s.realizations = out.rows.size();
  for (const auto& r : out.rows) {
    s.frac_ignorant_expectation += r.q_ignorant_expectation > 0.0;
    s.frac_ignorant_smoothed += r.q_ignorant_smoothed > 0.0;
    s.frac_omniscient_smoothed += r.q_omniscient_smoothed > 0.0;
    s.anomalous += r.anomalous_count;
  }
  const double n = static_cast<double>(s.realizations);
  s.frac_ignorant_expectation /= n;
  s.frac_ignorant_smoothed /= n;
  s.frac_omniscient_smoothed /= n;
  return out;
}

std::vector<SweepRow> simulate_dual_sweep(const ScenarioConfig& raw) {
  const ScenarioConfig config = raw.normalized();
  // tau_x of the base model is replaced per ratio.
  const DualModel base(config.omega, config.dt, config.tau, 2.0 * config.tau, config.steps());
  return sweep_ratio(base, config.initial_state(), config.ratios, config.realizations, config.master_seed,
                     config.threads);
}

void run_single(const ScenarioConfig& raw, std::ostream& os) {
  const ScenarioConfig config = raw.normalized();
  const SingleResult result = simulate_single(config);
  write_config_header(os, config);
  line(os, {"t", "r", "z", "z_w", "z_c", "z_S", "flag"});
  const auto& s = result.series;
  for (std::size_t j = 0; j < s.size(); ++j) {
    line(os, {num(s.times[j]), num(result.record.readouts[j]), num(s.expectation[j]), num(s.weak[j]),
              num(s.second_order[j]), num(s.smoothed[j]), std::to_string(s.anomalous[j])});
  }
  os << "# anomalous = " << s.anomalous_count << '\n';
}

void run_ensemble(const ScenarioConfig& raw, std::ostream& os) {
  const ScenarioConfig config = raw.normalized();
  const EnsembleResult result = simulate_ensemble(config);
  write_config_header(os, config);
  line(os, {"realization", "Q", "scaled_lnR", "anomalous"});
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    line(os, {std::to_string(i), num(r.q), num(r.scaled_ln_r), std::to_string(r.anomalous)});
  }
  const auto& s = result.summary;
  os << "# summary\n";
  os << "# realizations = " << s.realizations << '\n';
  os << "# frac_Q_positive = " << num(s.frac_q_positive) << '\n';
  os << "# frac_lnR_positive = " << num(s.frac_ln_r_positive) << '\n';
  os << "# mean_Q = " << num(s.mean_q) << '\n';
  os << "# mean_scaled_lnR = " << num(s.mean_scaled_ln_r) << '\n';
  os << "# mean_MSE_zS = " << num(s.mean_mse_smoothed) << '\n';
  os << "# median_relative_gap = " << num(s.median_relative_gap) << '\n';
  os << "# correlation_Q_scaled_lnR = " << num(s.correlation) << '\n';
  os << "# anomalous = " << s.anomalous << '\n';
}

void run_dual(const ScenarioConfig& raw, std::ostream& os) {
  const ScenarioConfig config = raw.normalized();
  const DualEnsembleResult result = simulate_dual(config);
  write_config_header(os, config);
  line(os, {"realization", "Q_xZ", "Q_xSZ", "Q_xS"});
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    line(os, {std::to_string(i), num(r.q_ignorant_expectation), num(r.q_ignorant_smoothed),
              num(r.q_omniscient_smoothed)});
  }
  const auto& s = result.summary;
  os << "# summary\n";
  os << "# realizations = " << s.realizations << '\n';
  os << "# frac_xZ = " << num(s.frac_ignorant_expectation) << '\n';
  os << "# frac_xSZ = " << num(s.frac_ignorant_smoothed) << '\n';
  os << "# frac_xS = " << num(s.frac_omniscient_smoothed) << '\n';
  os << "# anomalous = " << s.anomalous << '\n';
}

void run_dual_sweep(const ScenarioConfig& raw, std::ostream& os) {
  const ScenarioConfig config = raw.normalized();
  const std::vector<SweepRow> rows = simulate_dual_sweep(config);
  write_config_header(os, config);
  line(os, {"ratio", "frac_xZ", "frac_xSZ", "frac_xS", "n"});
  for (const auto& r : rows) {
    line(os, {num(r.ratio), num(r.frac_ignorant_expectation), num(r.frac_ignorant_smoothed),
              num(r.frac_omniscient_smoothed), std::to_string(r.realizations)});
  }
}

void run_scenario(const ScenarioConfig& config, std::ostream& os) {
  switch (config.scenario) {
    case Scenario::Single:
      return run_single(config, os);
    case Scenario::Ensemble:
      return run_ensemble(config, os);
    case Scenario::Dual:
      return run_dual(config, os);
    case Scenario::DualSweep:
      return run_dual_sweep(config, os);
  }
}

}  // namespace qsmooth
