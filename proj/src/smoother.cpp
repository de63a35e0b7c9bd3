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

#include "qsmooth/smoother.hpp"

namespace qsmooth {

EstimateSeries estimate_series(std::span<const QubitStated> states, std::span<const ComplexMatrix2d> effects,
                               const MeasurementModeld& monitor, double t0) {
  if (states.size() != effects.size()) {
    throw LengthMismatch("states and effects are not aligned");
  }
  const std::size_t n = states.size();
  const auto& obs = monitor.observable();
  EstimateSeries out;
  out.times.resize(n);
  out.expectation.resize(n);
  out.weak.resize(n);
  out.second_order.resize(n);
  out.smoothed.resize(n);
  out.anomalous.assign(n, 0);

  for (std::size_t j = 0; j < n; ++j) {
    const BidirectionalPointd point(states[j], effects[j]);
    bool flagged = point.anomalous();
    const double overlap = flagged ? point.overlap_floor() : point.overlap;
    const double z_w = detail::first_order_trace(point, obs) / overlap;
    const double z_c = detail::second_order_trace(point, obs).real() / overlap;
    double denominator = smoothed_denominator(z_c, monitor);
    if (!(denominator >= kDenominatorGuard)) {
      flagged = true;
      denominator = kDenominatorGuard;
    }
    out.times[j] = t0 + static_cast<double>(j) * monitor.dt();
    out.expectation[j] = expectation(states[j], obs);
    out.weak[j] = z_w;
    out.second_order[j] = z_c;
    out.smoothed[j] = z_w / denominator;
    if (flagged) {
      out.anomalous[j] = 1;
      ++out.anomalous_count;
    }
  }
  return out;
}

EstimateSeries smooth_series(const TrajectoryRecord& record, const EffectSeries& effects, const Observabled& obs) {
  const MeasurementModeld monitor(record.model.dt(), record.model.tau(), obs.axis());
  return estimate_series(record.forward_states, effects.effects, monitor, record.time(0));
}

}  // namespace qsmooth
