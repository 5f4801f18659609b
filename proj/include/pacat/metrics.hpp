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

#pragma once

#include "pacat/fock.hpp"

namespace pacat {

struct CatFitResult {
  Complex alpha;
  double fidelity;
  int iterations;
};

struct SqueezingReport {
  double sq_db;
  double asq_db;
  // Quadrature angle of minimum variance, in [0, pi).
  double theta_min;

  friend bool operator==(const SqueezingReport&, const SqueezingReport&) = default;
};

struct LegendreCheck {
  double formula;
  double numeric;
};

double purity(const DensityMatrix& rho);

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
// <psi|rho|psi>.
double fidelity(const StateVector& psi, const DensityMatrix& rho);
double fidelity(const StateVector& psi, const StateVector& phi);

// Var(x_theta) = a + b cos 2theta + c sin 2theta sampled on n_theta angles,
// fitted exactly, reported in dB relative to the vacuum variance.
SqueezingReport squeezing_report(const DensityMatrix& rho, int n_theta = 16);

// Lower bound of the |alpha| search; cat_minus is singular at zero.
inline constexpr double kCatAlphaMin = 1e-3;

// argmax over alpha of <cat_minus(alpha)|rho|cat_minus(alpha)>: a 50 x 16
// grid over |alpha| in [1e-3, alpha_max] and phase in [0, pi), then a
// pattern search down to |d alpha| < 1e-4.
CatFitResult cat_fit(const DensityMatrix& rho, double alpha_max = 3.0);

// Normalized odd-cat amplitudes in `space` without the truncation guard.
CVector cat_minus_amplitudes(const FockSpace& space, Complex alpha);

// <a^dag a^dag a a> / <a^dag a>^2.
double g2_zero(const DensityMatrix& rho);

// N_m(|xi|) = m! (1-|xi|^2)^{-m/2} P_m((1-|xi|^2)^{-1/2}) against the Fock
// norm of (a^dag)^m |xi> with tanh r = |xi|.
LegendreCheck legendre_norm_check(double xi_mag, int m, int dim = 60);

// Legendre polynomial P_l(t) by the Bonnet recurrence.
double legendre_p(int l, double t);

}  // namespace pacat
