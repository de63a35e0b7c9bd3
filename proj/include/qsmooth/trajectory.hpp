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
#include <vector>

#include "qsmooth/core_algebra.hpp"
#include "qsmooth/measurement.hpp"
#include "qsmooth/random.hpp"

namespace qsmooth {

/// One realization of a monitored, Rabi-driven qubit.
///
/// Each step applies the drive unitary U and then the measurement Kraus
/// operator. `forward_states[j]` is the state after U of step j and before
/// its measurement, so it is the state that generated `readouts[j]`.
struct TrajectoryRecord {
  MeasurementModeld model;
  double omega = 0.0;
  QubitStated initial_state;
  std::vector<Readout> readouts;
  std::vector<QubitStated> forward_states;

  std::size_t size() const { return readouts.size(); }
  /// Time of the j-th (0-based) measurement.
  double time(std::size_t j) const { return static_cast<double>(j + 1) * model.dt(); }
};

/// Future effects, one per step, stored rescaled to unit largest eigenvalue.
///
/// The un-normalized effect of the results strictly after step j is
/// `exp(log_norms[j]) * effects[j]`; `effects.back()` is the identity.
struct EffectSeries {
  std::vector<ComplexMatrix2d> effects;
  std::vector<double> log_norms;

  std::size_t size() const { return effects.size(); }
};

/// Simulates `steps` measurement steps starting from `initial`.
TrajectoryRecord forward_pass(const QubitStated& initial, double omega, const MeasurementModeld& model,
                              std::size_t steps, RandomStream& rng);

/// Filters a given readout sequence (no sampling): the causal states an
/// observer who knows only `readouts` would assign.
TrajectoryRecord filter_readouts(const QubitStated& initial, double omega, const MeasurementModeld& model,
                                 std::span<const Readout> readouts);

/// Accumulates the future effects of `record` backwards in time.
EffectSeries backward_pass(const TrajectoryRecord& record);

/// ln P(readouts | initial state) as the sum of predictive log-densities.
double log_likelihood(const TrajectoryRecord& record);

inline constexpr double kEffectGuard = 1e-300;

namespace detail {

/// Shared backward recursion. `pull_back(j, E)` must return K_j^dagger E K_j
/// for the measurement part K_j of step j; the drive U is applied here.
template <typename PullBack>
EffectSeries accumulate_effects(std::size_t n, const ComplexMatrix2d& u, PullBack&& pull_back) {
  EffectSeries out;
  out.effects.resize(n);
  out.log_norms.resize(n);
  if (n == 0) return out;
  out.effects[n - 1] = ComplexMatrix2d::Identity();
  out.log_norms[n - 1] = 0.0;
  const ComplexMatrix2d u_adj = u.adjoint();
  for (std::size_t j = n - 1; j > 0; --j) {
    ComplexMatrix2d e = hermitian_part(u_adj * pull_back(j, out.effects[j]) * u);
    const double trace = e.trace().real();
    if (!(trace > kEffectGuard)) {
      throw EffectUnderflow("future effect trace underflow at step " + std::to_string(j - 1));
    }
    const double largest = hermitian_eigenvalues<double>(e)(1);
    out.effects[j - 1] = e / largest;
    out.log_norms[j - 1] = out.log_norms[j] + std::log(largest);
  }
  return out;
}

}  // namespace detail

}  // namespace qsmooth
