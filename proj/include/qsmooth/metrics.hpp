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

#include <cstddef>
#include <span>

#include "qsmooth/smoother.hpp"
#include "qsmooth/trajectory.hpp"

namespace qsmooth {

/// Outcome of comparing an alternative estimate against a reference estimate
/// on one realized record.
struct ComparisonResult {
  double q = 0.0;        ///< relative MSE, positive when the alternative fits better
  double ln_r = 0.0;     ///< log hypothesis ratio, alternative over reference
  double mse_ref = 0.0;
  double mse_alt = 0.0;
  std::size_t n_steps = 0;
  std::size_t anomalous_count = 0;
};

/// Mean of squared differences.
double mse(std::span<const double> a, std::span<const double> b);

/// (MSE(readout, ref) - MSE(readout, alt)) / MSE(readout, alt)
double relative_mse(std::span<const double> readout, std::span<const double> alt, std::span<const double> ref);

/// Sum over steps of ln smoothed_pdf - ln predictive_pdf, using the weak
/// value, second-order term and expectation stored in `series`. Equal prior
/// weights for both hypotheses. Anomalous points contribute with their
/// guarded values.
double log_hypothesis_ratio(std::span<const Readout> readouts, const EstimateSeries& series,
                            const MeasurementModeld& monitor);

double log_hypothesis_ratio(const TrajectoryRecord& record, const EffectSeries& effects,
                            const EstimateSeries& series);

/// Pearson correlation coefficient of two equally long samples.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

/// Median of a sample (mean of the middle pair for even sizes).
double median(std::span<const double> values);

/// Smoothed estimate versus expectation value on a single-monitor record.
ComparisonResult compare_estimates(const TrajectoryRecord& record, const EffectSeries& effects,
                                   const EstimateSeries& series);

}  // namespace qsmooth
