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
#include <cstdint>
#include <span>
#include <vector>

#include "qsmooth/measurement.hpp"
#include "qsmooth/random.hpp"
#include "qsmooth/smoother.hpp"
#include "qsmooth/trajectory.hpp"

namespace qsmooth {

/// Two concurrent monitors sharing dt: a strong sigma_z monitor and a weaker
/// sigma_x monitor (tau_z < tau_x).
class DualModel {
 public:
  DualModel(double omega, double dt, double tau_z, double tau_x, std::size_t steps);

  double omega() const { return omega_; }
  double dt() const { return model_z_.dt(); }
  std::size_t steps() const { return steps_; }
  const MeasurementModeld& model_z() const { return model_z_; }
  const MeasurementModeld& model_x() const { return model_x_; }

  /// Same geometry with tau_x = ratio * tau_z.
  DualModel with_ratio(double ratio) const;

 private:
  double omega_;
  MeasurementModeld model_z_;
  MeasurementModeld model_x_;
  std::size_t steps_;
};

/// One realization of the interleaved protocol. Every step applies U, then
/// the sigma_z Kraus operator M, then the sigma_x Kraus operator N.
struct DualRecord {
  QubitStated initial_state;
  std::vector<Readout> readouts_z;
  std::vector<Readout> readouts_x;
  /// After U of step j; generated readouts_z[j].
  std::vector<QubitStated> pre_z_states;
  /// After M of step j; generated readouts_x[j].
  std::vector<QubitStated> true_forward_states;

  std::size_t size() const { return readouts_z.size(); }
};

DualRecord dual_forward_pass(const QubitStated& initial, const DualModel& dual, RandomStream& rng);

/// Estimates of sigma_x by an observer holding both records: `expectation` is
/// x from the fully conditioned causal state, `smoothed` is x_S.
EstimateSeries omniscient_estimates(const DualRecord& record, const DualModel& dual);

/// Estimates of sigma_x by the sigma_z observer: x^Z and x_S^Z. Only the
/// sigma_z record is visible, and the sigma_x backaction is left out of the
/// model. The smoothed estimate uses the sigma_x monitor's dt/tau_x.
EstimateSeries ignorant_estimates(std::span<const Readout> readouts_z, const QubitStated& initial,
                                  const DualModel& dual);

/// Relative MSEs against the omniscient expectation x, measured on r_x.
struct DualComparison {
  double q_ignorant_expectation = 0.0;  ///< Q(x^Z, x)
  double q_ignorant_smoothed = 0.0;     ///< Q(x_S^Z, x)
  double q_omniscient_smoothed = 0.0;   ///< Q(x_S, x)
  std::size_t anomalous_count = 0;
};

DualComparison compare_dual(const DualRecord& record, const EstimateSeries& omniscient,
                            const EstimateSeries& ignorant);

/// Simulates and scores realization `index` of an ensemble seeded by `master_seed`.
DualComparison run_dual_realization(const QubitStated& initial, const DualModel& dual, std::uint64_t master_seed,
                                    std::uint64_t index);

struct SweepRow {
  double ratio = 0.0;
  double frac_ignorant_expectation = 0.0;
  double frac_ignorant_smoothed = 0.0;
  double frac_omniscient_smoothed = 0.0;
  std::size_t realizations = 0;
};

/// Fractions of realizations with Q > 0 for each tau_x / tau_z in `ratios`.
/// Realization i uses the same random stream at every ratio.
std::vector<SweepRow> sweep_ratio(const DualModel& base, const QubitStated& initial, std::span<const double> ratios,
                                  std::size_t realizations, std::uint64_t master_seed, std::size_t threads = 0);

}  // namespace qsmooth
