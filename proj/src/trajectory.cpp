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

#include "qsmooth/trajectory.hpp"

#include <stdexcept>

namespace qsmooth {

TrajectoryRecord forward_pass(const QubitStated& initial, double omega, const MeasurementModeld& model,
                              std::size_t steps, RandomStream& rng) {
  if (steps == 0) throw InvalidModel("forward_pass requires at least one step");
  TrajectoryRecord record{model, omega, initial, {}, {}};
  record.readouts.reserve(steps);
  record.forward_states.reserve(steps);
  const ComplexMatrix2d u = rabi_unitary(omega, model.dt());
  QubitStated state = initial;
  for (std::size_t j = 0; j < steps; ++j) {
    state = QubitStated::from_trusted(conjugate(u, state.matrix()));
    record.forward_states.push_back(state);
    const Readout r = sample_readout(state, model, rng);
    record.readouts.push_back(r);
    state = update_state(state, r, model);
  }
  return record;
}

TrajectoryRecord filter_readouts(const QubitStated& initial, double omega, const MeasurementModeld& model,
                                 std::span<const Readout> readouts) {
  if (readouts.empty()) throw InvalidModel("filter_readouts requires at least one readout");
  TrajectoryRecord record{model, omega, initial, {readouts.begin(), readouts.end()}, {}};
  record.forward_states.reserve(readouts.size());
  const ComplexMatrix2d u = rabi_unitary(omega, model.dt());
  QubitStated state = initial;
  for (const Readout r : readouts) {
    state = QubitStated::from_trusted(conjugate(u, state.matrix()));
    record.forward_states.push_back(state);
    state = update_state(state, r, model);
  }
  return record;
}

EffectSeries backward_pass(const TrajectoryRecord& record) {
  const auto& model = record.model;
  const auto& readouts = record.readouts;
  return detail::accumulate_effects(record.size(), rabi_unitary(record.omega, model.dt()),
                                    [&](std::size_t j, const ComplexMatrix2d& e) {
                                      return detail::kraus_sandwich(e, readouts[j], model);
                                    });
}

double log_likelihood(const TrajectoryRecord& record) {
  const auto& obs = record.model.observable();
  double total = 0.0;
  for (std::size_t j = 0; j < record.size(); ++j) {
    total += log_predictive_pdf(record.readouts[j], expectation(record.forward_states[j], obs), record.model);
  }
  return total;
}

}  // namespace qsmooth
