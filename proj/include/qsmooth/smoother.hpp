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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "qsmooth/core_algebra.hpp"
#include "qsmooth/errors.hpp"
#include "qsmooth/measurement.hpp"
#include "qsmooth/trajectory.hpp"

namespace qsmooth {

/// Relative guard on tr(E rho) against |E|_F |rho|_F.
inline constexpr double kOverlapGuard = 1e-12;
inline constexpr double kDenominatorGuard = 1e-12;
inline constexpr double kImaginaryResidue = 1e-10;

/// Past state and future effect at one intermediate time.
template <typename Scalar = double>
struct BidirectionalPoint {
  QubitState<Scalar> past_state;
  ComplexMatrix2<Scalar> future_effect;
  Scalar overlap;

  BidirectionalPoint(const QubitState<Scalar>& state, const ComplexMatrix2<Scalar>& effect)
      : past_state(state),
        future_effect(effect),
        overlap(trace_product<Scalar>(effect, state.matrix()).real()) {}

  Scalar overlap_floor() const {
    return Scalar(kOverlapGuard) * future_effect.norm() * past_state.matrix().norm();
  }
  bool anomalous() const { return !(overlap >= overlap_floor()); }
};

using BidirectionalPointd = BidirectionalPoint<double>;

namespace detail {

template <typename Scalar>
void require_regular(const BidirectionalPoint<Scalar>& point) {
  if (point.anomalous()) {
    throw AnomalousOverlap("past state and future effect are nearly orthogonal (tr(E rho) = " +
                           std::to_string(point.overlap) + ")");
  }
}

template <typename Scalar>
std::complex<Scalar> second_order_trace(const BidirectionalPoint<Scalar>& point, const Observable<Scalar>& obs) {
  const ComplexMatrix2<Scalar> sandwiched = obs.matrix() * point.past_state.matrix() * obs.matrix();
  return trace_product<Scalar>(point.future_effect, sandwiched);
}

template <typename Scalar>
Scalar first_order_trace(const BidirectionalPoint<Scalar>& point, const Observable<Scalar>& obs) {
  const ComplexMatrix2<Scalar> o_rho = obs.matrix() * point.past_state.matrix();
  return trace_product<Scalar>(point.future_effect, o_rho).real();
}

}  // namespace detail

/// Re[tr(E O rho) / tr(E rho)]
template <typename Scalar>
Scalar weak_value(const BidirectionalPoint<Scalar>& point, const Observable<Scalar>& obs) {
  detail::require_regular(point);
  return detail::first_order_trace(point, obs) / point.overlap;
}

/// tr(E O rho O) / tr(E rho)
template <typename Scalar>
Scalar second_order_term(const BidirectionalPoint<Scalar>& point, const Observable<Scalar>& obs) {
  detail::require_regular(point);
  const std::complex<Scalar> value = detail::second_order_trace(point, obs) / point.overlap;
  if (std::abs(value.imag()) >= Scalar(kImaginaryResidue)) {
    throw Error("second-order term has an imaginary residue; future effect is not Hermitian");
  }
  return value.real();
}

/// 1/2 (1 + e^{-dt/2tau}) + 1/2 (1 - e^{-dt/2tau}) z_c
template <typename Scalar>
Scalar smoothed_denominator(Scalar z_c, const MeasurementModel<Scalar>& model) {
  const Scalar e = model.overlap_factor();
  return (1 + e) / 2 + (1 - e) / 2 * z_c;
}

template <typename Scalar>
Scalar smoothed_estimate(Scalar z_w, Scalar z_c, const MeasurementModel<Scalar>& model) {
  const Scalar denominator = smoothed_denominator(z_c, model);
  if (!(denominator >= Scalar(kDenominatorGuard))) {
    throw DegenerateDenominator("smoothed estimate denominator vanished");
  }
  return z_w / denominator;
}

/// Readout density conditioned on both past and future, written in terms of
/// the weak value and second-order term of the monitored observable.
template <typename Scalar>
Scalar smoothed_pdf(Scalar r, Scalar z_w, Scalar z_c, const MeasurementModel<Scalar>& model) {
  const Scalar e = model.overlap_factor();
  const Scalar g_plus = gaussian_component(r, Scalar(1), model);
  const Scalar g_minus = gaussian_component(r, Scalar(-1), model);
  const Scalar g_zero = gaussian_component(r, Scalar(0), model);
  const Scalar numerator = (g_plus - g_minus) * z_w + (g_plus + g_minus + 2 * e * g_zero) / 2 +
                           (g_plus + g_minus - 2 * e * g_zero) / 2 * z_c;
  return numerator / (2 * smoothed_denominator(z_c, model));
}

template <typename Scalar>
Scalar smoothed_pdf(Scalar r, const BidirectionalPoint<Scalar>& point, const MeasurementModel<Scalar>& model) {
  const auto& obs = model.observable();
  return smoothed_pdf(r, weak_value(point, obs), second_order_term(point, obs), model);
}

/// ln smoothed_pdf with the Gaussian exponents factored out. Returns -inf if
/// rounding drives the density to zero or below.
template <typename Scalar>
Scalar log_smoothed_pdf(Scalar r, Scalar z_w, Scalar z_c, const MeasurementModel<Scalar>& model) {
  const Scalar k = model.rate();
  const Scalar a_plus = (r - 1) * (r - 1) * k;
  const Scalar a_minus = (r + 1) * (r + 1) * k;
  // e^{-dt/2tau} G_0(r) = peak * exp(-(a_plus + a_minus) / 2)
  const Scalar a_zero = (a_plus + a_minus) / 2;
  const Scalar floor = std::min(a_plus, a_minus);
  const Scalar mix = (z_w + (1 + z_c) / 2) * std::exp(floor - a_plus) +
                     (-z_w + (1 + z_c) / 2) * std::exp(floor - a_minus) +
                     (1 - z_c) * std::exp(floor - a_zero);
  if (!(mix > 0)) return -std::numeric_limits<Scalar>::infinity();
  return model.log_peak() - floor + std::log(mix) - std::log(2 * smoothed_denominator(z_c, model));
}

template <typename Scalar>
struct SmoothedMoments {
  Scalar m1;
  Scalar m2;
  Scalar m3;
};

template <typename Scalar>
SmoothedMoments<Scalar> smoothed_moments(Scalar z_w, Scalar z_c, const MeasurementModel<Scalar>& model) {
  const Scalar z_s = smoothed_estimate(z_w, z_c, model);
  const Scalar v = model.variance();
  return {z_s, v + (1 + z_c) / 2 / smoothed_denominator(z_c, model), (1 + 3 * v) * z_s};
}

template <typename Scalar>
SmoothedMoments<Scalar> smoothed_moments(const BidirectionalPoint<Scalar>& point,
                                         const MeasurementModel<Scalar>& model) {
  const auto& obs = model.observable();
  return smoothed_moments(weak_value(point, obs), second_order_term(point, obs), model);
}

/// Time series of causal and smoothed estimates of one observable.
///
/// `weak` and `smoothed` may leave [-1, 1]. Points whose past and future are
/// nearly orthogonal carry the guarded ratio and are flagged, never dropped.
struct EstimateSeries {
  std::vector<double> times;
  std::vector<double> expectation;
  std::vector<double> weak;
  std::vector<double> second_order;
  std::vector<double> smoothed;
  std::vector<std::uint8_t> anomalous;
  std::size_t anomalous_count = 0;

  std::size_t size() const { return times.size(); }
};

/// Pairs `states[j]` with `effects[j]` and evaluates the estimates of the
/// monitor's observable; `monitor` also fixes dt/tau of the smoothed estimate.
/// Measurement j happens at time `t0 + j * dt`.
EstimateSeries estimate_series(std::span<const QubitStated> states, std::span<const ComplexMatrix2d> effects,
                               const MeasurementModeld& monitor, double t0);

/// Estimates of `obs` along a single-monitor record.
EstimateSeries smooth_series(const TrajectoryRecord& record, const EffectSeries& effects, const Observabled& obs);

}  // namespace qsmooth
