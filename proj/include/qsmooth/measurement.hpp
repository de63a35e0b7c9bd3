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
#include <numbers>
#include <string>

#include "qsmooth/core_algebra.hpp"
#include "qsmooth/errors.hpp"
#include "qsmooth/random.hpp"

namespace qsmooth {

/// A detector result, on the same scale as the eigenvalues +-1.
using Readout = double;

/// Gaussian monitor of one Pauli observable: readouts have variance tau/dt
/// around each eigenvalue.
template <typename Scalar = double>
class MeasurementModel {
 public:
  MeasurementModel(Scalar dt, Scalar tau, Axis axis = Axis::Z)
      : dt_(dt), tau_(tau), obs_(axis), basis_(pauli_eigenbasis<Scalar>(axis)) {
    if (!(dt > 0) || !(tau > 0) || !std::isfinite(dt) || !std::isfinite(tau)) {
      throw InvalidModel("measurement model requires finite dt > 0 and tau > 0");
    }
    variance_ = tau / dt;
    if (!(variance_ > 0) || !std::isfinite(variance_)) {
      throw InvalidModel("tau/dt must be positive and finite");
    }
    rate_ = dt / (2 * tau);
    log_peak_ = Scalar(0.5) * std::log(rate_ / std::numbers::pi_v<Scalar>);
    peak_ = std::exp(log_peak_);
    overlap_factor_ = std::exp(-rate_);
  }

  Scalar dt() const { return dt_; }
  Scalar tau() const { return tau_; }
  Axis axis() const { return obs_.axis(); }
  const Observable<Scalar>& observable() const { return obs_; }
  const ComplexMatrix2<Scalar>& eigenbasis() const { return basis_; }

  /// tau/dt
  Scalar variance() const { return variance_; }
  /// dt/(2 tau), the coefficient of (r - a)^2 in the Gaussian exponent.
  Scalar rate() const { return rate_; }
  /// sqrt(dt / (2 pi tau))
  Scalar peak() const { return peak_; }
  Scalar log_peak() const { return log_peak_; }
  /// exp(-dt / (2 tau))
  Scalar overlap_factor() const { return overlap_factor_; }

 private:
  Scalar dt_;
  Scalar tau_;
  Observable<Scalar> obs_;
  ComplexMatrix2<Scalar> basis_;
  Scalar variance_;
  Scalar rate_;
  Scalar log_peak_;
  Scalar peak_;
  Scalar overlap_factor_;
};

using MeasurementModeld = MeasurementModel<double>;

/// G_c(r) = exp(-(r - c)^2 dt / 2tau) sqrt(dt / 2 pi tau)
template <typename Scalar>
Scalar gaussian_component(Scalar r, Scalar center, const MeasurementModel<Scalar>& model) {
  const Scalar d = r - center;
  return model.peak() * std::exp(-d * d * model.rate());
}

/// Predictive readout density for an observable with expectation z.
template <typename Scalar>
Scalar predictive_pdf(Scalar r, Scalar z, const MeasurementModel<Scalar>& model) {
  return (1 + z) / 2 * gaussian_component(r, Scalar(1), model) +
         (1 - z) / 2 * gaussian_component(r, Scalar(-1), model);
}

/// ln predictive_pdf, evaluated without underflow in the tails.
template <typename Scalar>
Scalar log_predictive_pdf(Scalar r, Scalar z, const MeasurementModel<Scalar>& model) {
  const Scalar a_plus = (r - 1) * (r - 1) * model.rate();
  const Scalar a_minus = (r + 1) * (r + 1) * model.rate();
  const Scalar floor = std::min(a_plus, a_minus);
  const Scalar mix = (1 + z) / 2 * std::exp(floor - a_plus) + (1 - z) / 2 * std::exp(floor - a_minus);
  return model.log_peak() - floor + std::log(mix);
}

/// Square roots of G_{+1}(r) and G_{-1}(r): the Kraus operator in the
/// observable's eigenbasis.
template <typename Scalar>
struct KrausDiagonal {
  Scalar plus;
  Scalar minus;
};

template <typename Scalar>
KrausDiagonal<Scalar> kraus_diagonal(Scalar r, const MeasurementModel<Scalar>& model) {
  const Scalar root_peak = std::sqrt(model.peak());
  const Scalar half_rate = model.rate() / 2;
  return {root_peak * std::exp(-(r - 1) * (r - 1) * half_rate),
          root_peak * std::exp(-(r + 1) * (r + 1) * half_rate)};
}

/// M_r = (dt / 2 pi tau)^{1/4} exp(-(r - O)^2 dt / 4 tau)
template <typename Scalar>
ComplexMatrix2<Scalar> make_kraus(Scalar r, const MeasurementModel<Scalar>& model) {
  const auto d = kraus_diagonal(r, model);
  ComplexMatrix2<Scalar> diag = ComplexMatrix2<Scalar>::Zero();
  diag(0, 0) = d.plus;
  diag(1, 1) = d.minus;
  if (model.axis() == Axis::Z) return diag;
  return model.eigenbasis() * diag * model.eigenbasis().adjoint();
}

namespace detail {

/// D A D for a real diagonal D = diag(p, m).
template <typename Scalar>
ComplexMatrix2<Scalar> diagonal_sandwich(const ComplexMatrix2<Scalar>& a, Scalar p, Scalar m) {
  ComplexMatrix2<Scalar> out;
  out(0, 0) = a(0, 0) * (p * p);
  out(0, 1) = a(0, 1) * (p * m);
  out(1, 0) = a(1, 0) * (p * m);
  out(1, 1) = a(1, 1) * (m * m);
  return out;
}

/// M_r A M_r^dagger. Since M_r is Hermitian this is also M_r^dagger A M_r.
template <typename Scalar>
ComplexMatrix2<Scalar> kraus_sandwich(const ComplexMatrix2<Scalar>& a, Scalar r,
                                      const MeasurementModel<Scalar>& model) {
  const auto d = kraus_diagonal(r, model);
  if (model.axis() == Axis::Z) return diagonal_sandwich(a, d.plus, d.minus);
  const auto& v = model.eigenbasis();
  const ComplexMatrix2<Scalar> rotated = v.adjoint() * a * v;
  return v * diagonal_sandwich(rotated, d.plus, d.minus) * v.adjoint();
}

}  // namespace detail

inline constexpr double kUpdateGuard = 1e-300;

/// Draws a readout: first an eigenvalue with Born probability, then Gaussian
/// detector noise of standard deviation sqrt(tau/dt).
template <typename Scalar>
Readout sample_readout(const QubitState<Scalar>& state, const MeasurementModel<Scalar>& model,
                       RandomStream& rng) {
  const Scalar z = expectation(state, model.observable());
  const Scalar eigenvalue = rng.uniform() < (1 + z) / 2 ? Scalar(1) : Scalar(-1);
  return eigenvalue + std::sqrt(model.variance()) * rng.normal();
}

/// rho -> M_r rho M_r^dagger / tr(M_r rho M_r^dagger)
template <typename Scalar>
QubitState<Scalar> update_state(const QubitState<Scalar>& state, Readout r,
                                const MeasurementModel<Scalar>& model) {
  const ComplexMatrix2<Scalar> unnormalized = detail::kraus_sandwich(state.matrix(), Scalar(r), model);
  const Scalar norm = unnormalized.trace().real();
  if (!(norm > Scalar(kUpdateGuard))) {
    throw DegenerateUpdate("state update normalization " + std::to_string(norm) +
                           " below guard at readout " + std::to_string(r));
  }
  return QubitState<Scalar>::from_trusted(unnormalized / norm);
}

}  // namespace qsmooth
