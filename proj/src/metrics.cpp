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

#include "qsmooth/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qsmooth {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw LengthMismatch("sequence lengths differ");
}

}  // namespace

double mse(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  if (a.empty()) throw LengthMismatch("mse of empty sequences");
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double relative_mse(std::span<const double> readout, std::span<const double> alt, std::span<const double> ref) {
  const double mse_alt = mse(readout, alt);
  const double mse_ref = mse(readout, ref);
  if (!(mse_alt > 0.0)) throw DegenerateFit("alternative estimate reproduces the readout exactly");
  return (mse_ref - mse_alt) / mse_alt;
}

double log_hypothesis_ratio(std::span<const Readout> readouts, const EstimateSeries& series,
                            const MeasurementModeld& monitor) {
  require_same_length(readouts.size(), series.size());
  // Rounding can push the smoothed density of an anomalous point to zero.
  constexpr double kLogFloor = -745.0;
  double total = 0.0;
  for (std::size_t j = 0; j < readouts.size(); ++j) {
    const double r = readouts[j];
    double smoothed = log_smoothed_pdf(r, series.weak[j], series.second_order[j], monitor);
    if (!std::isfinite(smoothed)) smoothed = monitor.log_peak() + kLogFloor;
    total += smoothed - log_predictive_pdf(r, series.expectation[j], monitor);
  }
  return total;
}

double log_hypothesis_ratio(const TrajectoryRecord& record, const EffectSeries& effects,
                            const EstimateSeries& series) {
  require_same_length(record.size(), effects.size());
  return log_hypothesis_ratio(record.readouts, series, record.model);
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  if (a.size() < 2) throw LengthMismatch("correlation needs at least two samples");
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  return cov / std::sqrt(var_a * var_b);
}

double median(std::span<const double> values) {
  if (values.empty()) throw LengthMismatch("median of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  return sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}

ComparisonResult compare_estimates(const TrajectoryRecord& record, const EffectSeries& effects,
                                   const EstimateSeries& series) {
  require_same_length(record.size(), series.size());
  ComparisonResult out;
  out.mse_ref = mse(record.readouts, series.expectation);
  out.mse_alt = mse(record.readouts, series.smoothed);
  if (!(out.mse_alt > 0.0)) throw DegenerateFit("smoothed estimate reproduces the readout exactly");
  out.q = (out.mse_ref - out.mse_alt) / out.mse_alt;
  out.ln_r = log_hypothesis_ratio(record, effects, series);
  out.n_steps = record.size();
  out.anomalous_count = series.anomalous_count;
  return out;
}

}  // namespace qsmooth
