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

#include <cstdint>
#include <vector>

#include "pacat/fock.hpp"

namespace pacat {

struct QuadratureSample {
  double theta;  // local-oscillator phase, [0, pi)
  double x;
};

struct QuadratureDataset {
  std::vector<QuadratureSample> samples;
  double efficiency = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MleConfig {
  int dim = 20;
  int max_iters = 2000;
  // Stop once |dL / L| of the mean log-likelihood drops below this.
  double stop_tol = 1e-9;
  // R' = (1 - dilution) I + dilution R; 1 is plain R-rho-R.
  double dilution = 1.0;
  // Histogram x per phase with this bin width instead of one projector per
  // sample.
  bool binning = false;
  double bin_width = 0.05;

  void validate() const;
};

struct MleResult {
  DensityMatrix state;
  int iterations;
  // false when max_iters was reached first (convergence warning).
  bool converged;
  // Mean log-likelihood of every iterate, starting with rho_0.
  std::vector<double> log_likelihood;
};

// psi_0(x) .. psi_{count-1}(x), harmonic-oscillator eigenfunctions in the
// x = (a + a^dag)/sqrt(2) convention.
Eigen::VectorXd hermite_functions(int count, double x);

// p(x | theta) = sum_mn rho_mn e^{i(n-m)theta} psi_m(x) psi_n(x).
double quadrature_pdf(const DensityMatrix& rho, double theta, double x);

// n equally spaced phases in [0, pi).
std::vector<double> default_phases(int n = 12);

// Applies loss(efficiency), then draws n_per_theta samples per phase by
// inverse CDF on 4001 points over [-8, 8]. Phase k uses its own stream
// seeded from (seed, k), so datasets are reproducible bit for bit.
QuadratureDataset sample_quadratures(const DensityMatrix& rho, const std::vector<double>& thetas,
                                     int n_per_theta, double efficiency, std::uint64_t seed);

// Iterative maximum-likelihood (R rho R) reconstruction from the maximally
// mixed state.
MleResult mle_reconstruct(const QuadratureDataset& data, const MleConfig& cfg);

double mean_log_likelihood(const QuadratureDataset& data, const DensityMatrix& rho);

}  // namespace pacat
