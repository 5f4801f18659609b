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

// Power transmissivity of a pure-loss channel, 0 <= eta <= 1.
class LossParam {
 public:
  explicit LossParam(double eta);
  double eta() const { return eta_; }

 private:
  double eta_;
};

// RMS phase of Gaussian phase diffusion, radians.
class PhaseNoiseParam {
 public:
  explicit PhaseNoiseParam(double sigma);
  static PhaseNoiseParam from_mrad(double mrad) { return PhaseNoiseParam(mrad * 1e-3); }
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

// First-order pair amplitude of the down-conversion source, 0 < g < 1.
class SpdcGain {
 public:
  explicit SpdcGain(double g);
  double g() const { return g_; }

 private:
  double g_;
};

// Outcome of a non-trace-preserving map: the normalized state and the trace
// before normalization.
struct ConditionalState {
  DensityMatrix state;
  double weight;
};

struct HeraldResult {
  DensityMatrix state;
  double herald_prob;
};

// sum_k K_k rho K_k^dag with K_k[n-k, n] = sqrt(C(n,k)) eta^{(n-k)/2} (1-eta)^{k/2}.
DensityMatrix loss(const DensityMatrix& rho, LossParam p);

// a^dag rho a / Tr(a^dag rho a). Needs the top level nearly empty since the
// map pushes population up by one.
ConditionalState photon_add(const DensityMatrix& rho);

// a rho a^dag / <n>.
ConditionalState photon_subtract(const DensityMatrix& rho);

// rho_mn exp(-sigma^2 (m-n)^2 / 2).
DensityMatrix phase_diffusion(const DensityMatrix& rho, PhaseNoiseParam p);

// Two-mode first-order down-conversion state (1 + g a_s^dag a_i^dag) acting on
// rho (x) |0><0|_i, conditioned on one idler photon.
HeraldResult spdc_herald(const DensityMatrix& rho_signal, SpdcGain gain);

}  // namespace pacat
