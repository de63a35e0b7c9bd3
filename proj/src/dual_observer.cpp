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

#include "qsmooth/dual_observer.hpp"

#include "qsmooth/metrics.hpp"
#include "qsmooth/parallel.hpp"

namespace qsmooth {

DualModel::DualModel(double omega, double dt, double tau_z, double tau_x, std::size_t steps)
    : omega_(omega), model_z_(dt, tau_z, Axis::Z), model_x_(dt, tau_x, Axis::X), steps_(steps) {
  if (!(tau_z < tau_x)) throw InvalidModel("dual monitoring requires tau_z < tau_x");
  if (steps == 0) throw InvalidModel("dual monitoring requires at least one step");
}

DualModel DualModel::with_ratio(double ratio) const {
  if (!(ratio > 1.0)) throw InvalidModel("tau_x / tau_z must exceed 1");
  return DualModel(omega_, dt(), model_z_.tau(), ratio * model_z_.tau(), steps_);
}

DualRecord dual_forward_pass(const QubitStated& initial, const DualModel& dual, RandomStream& rng) {
  const std::size_t n = dual.steps();
  DualRecord record{initial, {}, {}, {}, {}};
  record.readouts_z.reserve(n);
  record.readouts_x.reserve(n);
  record.pre_z_states.reserve(n);
  record.true_forward_states.reserve(n);
  const ComplexMatrix2d u = rabi_unitary(dual.omega(), dual.dt());
  QubitStated state = initial;
  for (std::size_t j = 0; j < n; ++j) {
    state = QubitStated::from_trusted(conjugate(u, state.matrix()));
    record.pre_z_states.push_back(state);
    const Readout r_z = sample_readout(state, dual.model_z(), rng);
    state = update_state(state, r_z, dual.model_z());
    record.true_forward_states.push_back(state);
    const Readout r_x = sample_readout(state, dual.model_x(), rng);
    state = update_state(state, r_x, dual.model_x());
    record.readouts_z.push_back(r_z);
    record.readouts_x.push_back(r_x);
  }
  return record;
}

EstimateSeries omniscient_estimates(const DualRecord& record, const DualModel& dual) {
  // The sigma_x readout of step j sits between M_j and U_{j+1}, so its future
  // effect covers steps j+1..N-1 with both Kraus families.
  const auto& mz = dual.model_z();
  const auto& mx = dual.model_x();
  const EffectSeries effects = detail::accumulate_effects(
      record.size(), rabi_unitary(dual.omega(), dual.dt()), [&](std::size_t j, const ComplexMatrix2d& e) {
        return detail::kraus_sandwich(detail::kraus_sandwich(e, record.readouts_x[j], mx), record.readouts_z[j], mz);
      });
  return estimate_series(record.true_forward_states, effects.effects, mx, dual.dt());
}

EstimateSeries ignorant_estimates(std::span<const Readout> readouts_z, const QubitStated& initial,
                                  const DualModel& dual) {
  const TrajectoryRecord record = filter_readouts(initial, dual.omega(), dual.model_z(), readouts_z);
  const EffectSeries effects = backward_pass(record);
  std::vector<QubitStated> measured;
  measured.reserve(record.size());
  for (std::size_t j = 0; j < record.size(); ++j) {
    measured.push_back(update_state(record.forward_states[j], readouts_z[j], dual.model_z()));
  }
  return estimate_series(measured, effects.effects, dual.model_x(), dual.dt());
}

DualComparison compare_dual(const DualRecord& record, const EstimateSeries& omniscient,
                            const EstimateSeries& ignorant) {
  const std::span<const double> r_x = record.readouts_x;
  const std::span<const double> x = omniscient.expectation;
  DualComparison out;
  out.q_ignorant_expectation = relative_mse(r_x, ignorant.expectation, x);
  out.q_ignorant_smoothed = relative_mse(r_x, ignorant.smoothed, x);
  out.q_omniscient_smoothed = relative_mse(r_x, omniscient.smoothed, x);
  out.anomalous_count = omniscient.anomalous_count + ignorant.anomalous_count;
  return out;
}

DualComparison run_dual_realization(const QubitStated& initial, const DualModel& dual, std::uint64_t master_seed,
                                    std::uint64_t index) {
  RandomStream rng = RandomStream::for_realization(master_seed, index);
  const DualRecord record = dual_forward_pass(initial, dual, rng);
  const EstimateSeries omniscient = omniscient_estimates(record, dual);
  const EstimateSeries ignorant = ignorant_estimates(record.readouts_z, initial, dual);
  return compare_dual(record, omniscient, ignorant);
}

std::vector<SweepRow> sweep_ratio(const DualModel& base, const QubitStated& initial, std::span<const double> ratios,
                                  std::size_t realizations, std::uint64_t master_seed, std::size_t threads) {
  threads = resolve_thread_count(threads);
  std::vector<SweepRow> rows;
  rows.reserve(ratios.size());
  for (const double ratio : ratios) {
    const DualModel dual = base.with_ratio(ratio);
    std::vector<DualComparison> results(realizations);
    parallel_for(realizations, threads,
                 [&](std::size_t i) { results[i] = run_dual_realization(initial, dual, master_seed, i); });
    SweepRow row;
    row.ratio = ratio;
    row.realizations = realizations;
    for (const auto& c : results) {
      row.frac_ignorant_expectation += c.q_ignorant_expectation > 0.0;
      row.frac_ignorant_smoothed += c.q_ignorant_smoothed > 0.0;
      row.frac_omniscient_smoothed += c.q_omniscient_smoothed > 0.0;
    }
    const double n = realizations > 0 ? static_cast<double>(realizations) : 1.0;
    row.frac_ignorant_expectation /= n;
    row.frac_ignorant_smoothed /= n;
    row.frac_omniscient_smoothed /= n;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qsmooth
