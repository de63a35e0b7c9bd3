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

#include <Eigen/Core>

#include <cmath>
#include <complex>

#include "qsmooth/errors.hpp"

namespace qsmooth {

template <typename Scalar>
using ComplexMatrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using ComplexMatrix2d = ComplexMatrix2<double>;

/// Pauli axes. Basis index 0 is the +1 eigenstate of sigma_z.
enum class Axis { X, Y, Z };

template <typename Scalar = double>
ComplexMatrix2<Scalar> identity2() {
  return ComplexMatrix2<Scalar>::Identity();
}

template <typename Scalar = double>
ComplexMatrix2<Scalar> pauli(Axis axis) {
  using C = std::complex<Scalar>;
  ComplexMatrix2<Scalar> m;
  switch (axis) {
    case Axis::X:
      m << C(0), C(1), C(1), C(0);
      break;
    case Axis::Y:
      m << C(0), C(0, -1), C(0, 1), C(0);
      break;
    case Axis::Z:
      m << C(1), C(0), C(0), C(-1);
      break;
  }
  return m;
}

/// Unitary whose columns are the (+1, -1) eigenvectors of the Pauli operator.
template <typename Scalar = double>
ComplexMatrix2<Scalar> pauli_eigenbasis(Axis axis) {
  using C = std::complex<Scalar>;
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  ComplexMatrix2<Scalar> v;
  switch (axis) {
    case Axis::X:
      v << C(h), C(h), C(h), C(-h);
      break;
    case Axis::Y:
      v << C(h), C(h), C(0, h), C(0, -h);
      break;
    case Axis::Z:
      v = ComplexMatrix2<Scalar>::Identity();
      break;
  }
  return v;
}

inline const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::X:
      return "X";
    case Axis::Y:
      return "Y";
    case Axis::Z:
      return "Z";
  }
  return "?";
}

template <typename Scalar>
ComplexMatrix2<Scalar> mat_mul(const ComplexMatrix2<Scalar>& a, const ComplexMatrix2<Scalar>& b) {
  return a * b;
}

/// (A + A^dagger) / 2
template <typename Derived>
typename Derived::PlainObject hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.adjoint()) / typename Derived::RealScalar(2);
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, typename Derived::RealScalar tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Eigenvalues (ascending) of a 2x2 Hermitian matrix, closed form.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> hermitian_eigenvalues(const ComplexMatrix2<Scalar>& a) {
  const Scalar mean = (a(0, 0).real() + a(1, 1).real()) / 2;
  const Scalar half_gap = (a(0, 0).real() - a(1, 1).real()) / 2;
  const Scalar radius = std::hypot(half_gap, std::abs(a(0, 1)));
  return {mean - radius, mean + radius};
}

template <typename Scalar>
bool all_finite(const ComplexMatrix2<Scalar>& a) {
  for (int i = 0; i < 4; ++i) {
    const auto v = a(i / 2, i % 2);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

/// tr(A B) without forming the product.
template <typename Scalar>
std::complex<Scalar> trace_product(const ComplexMatrix2<Scalar>& a, const ComplexMatrix2<Scalar>& b) {
  return a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0) + a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1);
}

/// U rho U^dagger
template <typename Scalar>
ComplexMatrix2<Scalar> conjugate(const ComplexMatrix2<Scalar>& u, const ComplexMatrix2<Scalar>& rho) {
  return u * rho * u.adjoint();
}

/// A Pauli observable together with its matrix.
template <typename Scalar = double>
class Observable {
 public:
  explicit Observable(Axis axis) : axis_(axis), matrix_(pauli<Scalar>(axis)) {}

  static Observable x() { return Observable(Axis::X); }
  static Observable y() { return Observable(Axis::Y); }
  static Observable z() { return Observable(Axis::Z); }

  Axis axis() const { return axis_; }
  const ComplexMatrix2<Scalar>& matrix() const { return matrix_; }

 private:
  Axis axis_;
  ComplexMatrix2<Scalar> matrix_;
};

/// Density operator of a qubit.
///
/// Construction through `from_matrix` validates hermiticity, unit trace and
/// positivity at 1e-12; `from_bloch` rejects vectors longer than 1 + 1e-10.
template <typename Scalar = double>
class QubitState {
 public:
  using Matrix = ComplexMatrix2<Scalar>;

  static constexpr Scalar kTolerance = Scalar(1e-12);
  static constexpr Scalar kBlochTolerance = Scalar(1e-10);

  QubitState() : rho_(Matrix::Identity() / Scalar(2)) {}

  static QubitState from_bloch(Scalar x, Scalar y, Scalar z) {
    const Scalar norm = std::sqrt(x * x + y * y + z * z);
    if (!(norm <= 1 + kBlochTolerance)) {
      throw InvalidState("Bloch vector norm exceeds 1");
    }
    using C = std::complex<Scalar>;
    Matrix m;
    m << C((1 + z) / 2), C(x / 2, -y / 2), C(x / 2, y / 2), C((1 - z) / 2);
    return QubitState(m);
  }

  static QubitState from_matrix(const Matrix& m) {
    if (!all_finite(m)) throw InvalidState("non-finite density matrix entry");
    if (!is_hermitian(m, kTolerance)) throw InvalidState("density matrix is not Hermitian");
    if (std::abs(m.trace() - std::complex<Scalar>(1)) > kTolerance) {
      throw InvalidState("density matrix trace differs from 1");
    }
    if (hermitian_eigenvalues<Scalar>(hermitian_part(m))(0) < -kTolerance) {
      throw InvalidState("density matrix is not positive semidefinite");
    }
    return QubitState(m);
  }

  /// Re-symmetrizes and renormalizes; no positivity check. Intended for
  /// matrices produced by trace-preserving library updates.
  static QubitState from_trusted(const Matrix& m) {
    Matrix h = hermitian_part(m);
    return QubitState(h / h.trace().real());
  }

  const Matrix& matrix() const { return rho_; }

  Scalar x() const { return 2 * rho_(0, 1).real(); }
  Scalar y() const { return -2 * rho_(0, 1).imag(); }
  Scalar z() const { return rho_(0, 0).real() - rho_(1, 1).real(); }
  Scalar bloch_norm() const { return std::sqrt(x() * x() + y() * y() + z() * z()); }
  Scalar purity() const { return (rho_ * rho_).trace().real(); }

 private:
  explicit QubitState(const Matrix& m) : rho_(m) {}

  Matrix rho_;
};

using QubitStated = QubitState<double>;
using Observabled = Observable<double>;

/// tr(rho O)
template <typename Scalar>
Scalar expectation(const QubitState<Scalar>& state, const Observable<Scalar>& obs) {
  switch (obs.axis()) {
    case Axis::X:
      return state.x();
    case Axis::Y:
      return state.y();
    case Axis::Z:
      return state.z();
  }
  return (state.matrix() * obs.matrix()).trace().real();
}

/// exp(-i Omega dt sigma_y / 2) = cos(Omega dt / 2) I - i sin(Omega dt / 2) sigma_y.
/// Rotates the Bloch vector about y, i.e. within the x-z plane.
template <typename Scalar = double>
ComplexMatrix2<Scalar> rabi_unitary(Scalar omega, Scalar dt) {
  if (!(dt > 0)) throw InvalidModel("rabi_unitary requires dt > 0");
  using C = std::complex<Scalar>;
  const Scalar c = std::cos(omega * dt / 2);
  const Scalar s = std::sin(omega * dt / 2);
  ComplexMatrix2<Scalar> u;
  u << C(c), C(-s), C(s), C(c);
  return u;
}

}  // namespace qsmooth
