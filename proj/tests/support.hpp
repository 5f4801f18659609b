// Copyright 2026 The pacat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared helpers for the test suites: random states and slow, independent
// reference implementations.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "pacat/fock.hpp"

namespace pacat::testing {

inline constexpr double kPi = std::numbers::pi;

// Random mixed state supported on the first `levels` Fock levels of `space`.
inline DensityMatrix random_density(const FockSpace& space, int levels, int rank,
                                    std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix b = CMatrix::Zero(space.dim(), rank);
  for (int j = 0; j < rank; ++j)
    for (int n = 0; n < levels; ++n) b(n, j) = Complex(g(rng), g(rng));
  CMatrix rho = b * b.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(space, 0.5 * (rho + rho.adjoint()));
}

inline StateVector random_pure(const FockSpace& space, int levels, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v = CVector::Zero(space.dim());
  for (int n = 0; n < levels; ++n) v(n) = Complex(g(rng), g(rng));
  return StateVector(space, v);
}

// W(x, p) = (1/pi) Tr[rho D(beta) Pi D(beta)^dag] with the displacement built
// by a dense matrix exponential in a padded space.
inline double wigner_displaced_parity(const DensityMatrix& rho, double x, double p, int pad = 150) {
  const int d = rho.dim() + pad;
  CMatrix a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  const Complex beta(x / std::sqrt(2.0), p / std::sqrt(2.0));
  const CMatrix gen = beta * a.adjoint() - std::conj(beta) * a;
  const CMatrix disp = gen.exp();
  CMatrix big = CMatrix::Zero(d, d);
  big.topLeftCorner(rho.dim(), rho.dim()) = rho.matrix();
  const CMatrix shifted = disp.adjoint() * big * disp;
  // Parity is only trusted on levels the padding keeps away from the cut.
  double w = 0.0;
  for (int n = 0; n < rho.dim() + pad / 2; ++n) w += (n % 2 ? -1.0 : 1.0) * shifted(n, n).real();
  return w / kPi;
}

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 from Hermitian eigendecompositions.
inline double fidelity_eig(const CMatrix& rho, const CMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const CMatrix sq = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix m = sq * sigma * sq;
  Eigen::SelfAdjointEigenSolver<CMatrix> es2(0.5 * (m + m.adjoint()));
  const double t = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

// Explicit Kraus sum for the pure-loss channel.
inline CMatrix loss_kraus(const CMatrix& rho, double eta) {
  const int d = int(rho.rows());
  CMatrix out = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    CMatrix kk = CMatrix::Zero(d, d);
    for (int n = k; n < d; ++n) {
      const double c = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
      kk(n - k, n) = std::sqrt(c * std::pow(eta, n - k) * std::pow(1.0 - eta, k));
    }
    out += kk * rho * kk.adjoint();
  }
  return out;
}

// psi_n(x) from H_n evaluated in long double, for small n only.
inline double hermite_function_direct(int n, double x) {
  long double h0 = 1.0L, h1 = 2.0L * x;
  long double h = n == 0 ? h0 : h1;
  for (int k = 2; k <= n; ++k) {
    h = 2.0L * x * h1 - 2.0L * (k - 1) * h0;
    h0 = h1;
    h1 = h;
  }
  const long double norm =
      std::sqrt(std::pow(2.0L, n) * std::tgamma((long double)n + 1.0L) * std::sqrt((long double)kPi));
  return double(h * std::exp(-0.5L * x * x) / norm);
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace pacat::testing
