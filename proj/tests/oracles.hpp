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

// Independent reference computations for the tests. Nothing here calls the
// library's Kraus, effect or density routines; operators are rebuilt from
// spectral projectors and multiplied out in full.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Mat = Eigen::Matrix2cd;
using C = std::complex<double>;

inline Mat pauli_x() {
  Mat m;
  m << 0, 1, 1, 0;
  return m;
}
inline Mat pauli_y() {
  Mat m;
  m << 0, C(0, -1), C(0, 1), 0;
  return m;
}
inline Mat pauli_z() {
  Mat m;
  m << 1, 0, 0, -1;
  return m;
}

inline Mat density(double x, double y, double z) {
  return (Mat::Identity() + x * pauli_x() + y * pauli_y() + z * pauli_z()) / 2.0;
}

inline double gaussian(double r, double center, double dt, double tau) {
  return std::exp(-(r - center) * (r - center) * dt / (2 * tau)) / std::sqrt(2 * std::numbers::pi * tau / dt);
}

/// sqrt(G_+1) P_+ + sqrt(G_-1) P_- with P_+- = (I +- O) / 2.
inline Mat kraus(double r, const Mat& obs, double dt, double tau) {
  const Mat plus = (Mat::Identity() + obs) / 2.0;
  const Mat minus = (Mat::Identity() - obs) / 2.0;
  return std::sqrt(gaussian(r, 1, dt, tau)) * plus + std::sqrt(gaussian(r, -1, dt, tau)) * minus;
}

inline Mat rabi(double omega, double dt) {
  // exp(-i omega dt sigma_y / 2) by eigen-decomposition of sigma_y.
  Eigen::SelfAdjointEigenSolver<Mat> solver(pauli_y());
  const Eigen::Vector2cd phases = (-C(0, 1) * omega * dt / 2.0 * solver.eigenvalues().cast<C>()).array().exp();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

/// A = K_{n-1} U ... K_{first} U for the given step operators.
inline Mat chain(const std::vector<Mat>& step_kraus, const Mat& u, std::size_t first) {
  Mat a = Mat::Identity();
  for (std::size_t j = first; j < step_kraus.size(); ++j) a = step_kraus[j] * u * a;
  return a;
}

/// Composite Simpson rule on [lo, hi] with an even number of panels.
inline double integrate(const std::function<double(double)>& f, double lo, double hi, int panels) {
  if (panels % 2) ++panels;
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Uniform point in the Bloch ball.
inline Eigen::Vector3d random_bloch(std::mt19937_64& rng, double max_radius = 1.0) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
  v.normalize();
  return v * max_radius * std::cbrt(uniform(rng));
}

/// Random positive semidefinite matrix A A^dagger.
inline Mat random_psd(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = C(normal(rng), normal(rng));
  return a * a.adjoint();
}

}  // namespace oracle
