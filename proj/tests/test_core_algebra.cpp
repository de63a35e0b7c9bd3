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

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qsmooth/core_algebra.hpp"

using namespace qsmooth;

namespace {

double max_abs(const ComplexMatrix2d& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("mat_mul follows Pauli algebra") {
  const ComplexMatrix2d a = [] { std::mt19937_64 r(3); return oracle::random_psd(r); }();
  CHECK(max_abs(mat_mul(identity2(), a) - a) == 0.0);
  CHECK(max_abs(mat_mul(pauli(Axis::Z), pauli(Axis::Z)) - identity2()) == 0.0);
  const ComplexMatrix2d i_z = std::complex<double>(0, 1) * pauli(Axis::Z);
  CHECK(max_abs(mat_mul(pauli(Axis::X), pauli(Axis::Y)) - i_z) == 0.0);
}

TEST_CASE("Observables are Hermitian, traceless and involutory") {
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const Observabled obs(axis);
    CHECK(is_hermitian(obs.matrix(), 1e-12));
    CHECK(std::abs(obs.matrix().trace()) < 1e-12);
    CHECK(max_abs(obs.matrix() * obs.matrix() - identity2()) < 1e-12);
    // eigenbasis columns are the +1 / -1 eigenvectors
    const ComplexMatrix2d v = pauli_eigenbasis(axis);
    ComplexMatrix2d d = ComplexMatrix2d::Zero();
    d(0, 0) = 1;
    d(1, 1) = -1;
    CHECK(max_abs(v * d * v.adjoint() - obs.matrix()) < 1e-15);
  }
}

TEST_CASE("expectation of simple states") {
  CHECK(expectation(QubitStated::from_bloch(0, 0, 1), Observabled::z()) == doctest::Approx(1.0));
  CHECK(expectation(QubitStated::from_bloch(0, 0, 0), Observabled::x()) == doctest::Approx(0.0));
  CHECK(expectation(QubitStated::from_bloch(1, 0, 0), Observabled::z()) == doctest::Approx(0.0));
  const auto s = QubitStated::from_bloch(0.3, -0.4, 0.5);
  CHECK(expectation(s, Observabled::x()) == doctest::Approx(0.3));
  CHECK(expectation(s, Observabled::y()) == doctest::Approx(-0.4));
  CHECK(s.matrix().isApprox(oracle::density(0.3, -0.4, 0.5), 1e-15));
}

TEST_CASE("expectation is linear in the state") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto b1 = oracle::random_bloch(rng);
    const auto b2 = oracle::random_bloch(rng);
    const double alpha = unit(rng);
    const auto s1 = QubitStated::from_bloch(b1.x(), b1.y(), b1.z());
    const auto s2 = QubitStated::from_bloch(b2.x(), b2.y(), b2.z());
    const auto mix = QubitStated::from_matrix(alpha * s1.matrix() + (1 - alpha) * s2.matrix());
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
      const Observabled obs(axis);
      const double lhs = expectation(mix, obs);
      CHECK(std::abs(lhs - (alpha * expectation(s1, obs) + (1 - alpha) * expectation(s2, obs))) < 1e-12);
      CHECK(std::abs(lhs) <= 1 + 1e-10);
    }
  }
}

TEST_CASE("rabi_unitary special angles") {
  CHECK(max_abs(rabi_unitary(0.0, 1.0) - identity2()) < 1e-15);
  const double pi = std::numbers::pi;
  CHECK(max_abs(rabi_unitary(2 * pi, 1.0) + identity2()) < 1e-15);
  const auto up = QubitStated::from_bloch(0, 0, 1);
  const auto flipped = QubitStated::from_trusted(conjugate(rabi_unitary(pi, 1.0), up.matrix()));
  CHECK(flipped.z() == doctest::Approx(-1.0));
  // a full period leaves every Bloch vector in place
  const auto s = QubitStated::from_bloch(0.2, 0.1, -0.6);
  CHECK(max_abs(conjugate(rabi_unitary(2 * pi, 1.0), s.matrix()) - s.matrix()) < 1e-15);
  CHECK_THROWS_AS(rabi_unitary(1.0, 0.0), InvalidModel);
}

TEST_CASE("rabi_unitary matches the matrix exponential and is unitary") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> omega_dist(-20.0, 20.0);
  std::uniform_real_distribution<double> dt_dist(1e-4, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double omega = omega_dist(rng);
    const double dt = dt_dist(rng);
    const ComplexMatrix2d u = rabi_unitary(omega, dt);
    CHECK(max_abs(u.adjoint() * u - identity2()) < 1e-12);
    CHECK(max_abs(u - oracle::rabi(omega, dt)) < 1e-12);
    const auto b = oracle::random_bloch(rng);
    const ComplexMatrix2d rho = oracle::density(b.x(), b.y(), b.z());
    CHECK(std::abs(conjugate(u, rho).trace() - rho.trace()) < 1e-12);
  }
}

TEST_CASE("QubitState validation") {
  CHECK_THROWS_AS(QubitStated::from_bloch(0.8, 0.0, 0.8), InvalidState);
  CHECK_NOTHROW(QubitStated::from_bloch(0.0, 0.0, 1.0 + 1e-11));

  ComplexMatrix2d m = oracle::density(0.1, 0.2, 0.3);
  m(0, 1) += 1e-6;
  CHECK_THROWS_AS(QubitStated::from_matrix(m), InvalidState);

  CHECK_THROWS_AS(QubitStated::from_matrix(ComplexMatrix2d::Identity()), InvalidState);

  ComplexMatrix2d negative = ComplexMatrix2d::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(QubitStated::from_matrix(negative), InvalidState);

  ComplexMatrix2d nan = oracle::density(0, 0, 0);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(QubitStated::from_matrix(nan), InvalidState);

  const auto s = QubitStated::from_matrix(oracle::density(0.6, 0.0, 0.8));
  CHECK(s.bloch_norm() == doctest::Approx(1.0));
  CHECK(s.purity() == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eigenvalues agrees with a general solver") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix2d a = oracle::random_psd(rng) - 0.5 * ComplexMatrix2d::Identity();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix2d> solver(a);
    const auto ev = hermitian_eigenvalues<double>(a);
    CHECK(std::abs(ev(0) - solver.eigenvalues()(0)) < 1e-12);
    CHECK(std::abs(ev(1) - solver.eigenvalues()(1)) < 1e-12);
  }
}

TEST_CASE("float instantiation") {
  const auto s = QubitState<float>::from_bloch(0.0f, 0.0f, 1.0f);
  CHECK(expectation(s, Observable<float>::z()) == doctest::Approx(1.0f));
  const ComplexMatrix2<float> u = rabi_unitary(1.0f, 0.5f);
  CHECK((u.adjoint() * u - ComplexMatrix2<float>::Identity()).cwiseAbs().maxCoeff() < 1e-6f);
}
