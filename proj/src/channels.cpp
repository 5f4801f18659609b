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

#include "pacat/channels.hpp"

#include <cmath>
#include <vector>

namespace pacat {

namespace {

std::vector<double> log_factorials(int n) {
  std::vector<double> lf(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) lf[k] = lf[k - 1] + std::log(double(k));
  return lf;
}

}  // namespace

LossParam::LossParam(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw ValidationError("loss transmissivity must lie in [0, 1], got " + std::to_string(eta));
  }
}

PhaseNoiseParam::PhaseNoiseParam(double sigma) : sigma_(sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ValidationError("phase noise must be finite and >= 0, got " + std::to_string(sigma));
  }
}

SpdcGain::SpdcGain(double g) : g_(g) {
  if (!(g > 0.0 && g < 1.0)) {
    throw ValidationError("SPDC gain must lie in (0, 1), got " + std::to_string(g));
  }
}

DensityMatrix loss(const DensityMatrix& rho, LossParam p) {
  const double eta = p.eta();
  const int d = rho.dim();
  if (eta == 1.0) return rho;
  if (eta == 0.0) {
    CMatrix vac = CMatrix::Zero(d, d);
    vac(0, 0) = rho.matrix().trace();
    return DensityMatrix::normalized(rho.space(), vac);
  }
  const auto lf = log_factorials(d);
  const double log_eta = std::log(eta);
  const double log_loss = std::log1p(-eta);
  auto log_binom = [&](int n, int k) { return lf[n] - lf[k] - lf[n - k]; };

  // rho'[m, n] = sum_k sqrt(C(m+k,k) C(n+k,k)) eta^{(m+n)/2} (1-eta)^k rho[m+k, n+k]
  const CMatrix& in = rho.matrix();
  CMatrix out = CMatrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = m; n < d; ++n) {
      Complex acc = 0.0;
      for (int k = 0; n + k < d; ++k) {
        const double lw = 0.5 * (log_binom(m + k, k) + log_binom(n + k, k)) +
                          0.5 * (m + n) * log_eta + k * log_loss;
        acc += std::exp(lw) * in(m + k, n + k);
      }
      out(m, n) = acc;
      out(n, m) = std::conj(acc);
    }
  }
  return DensityMatrix::normalized(rho.space(), out);
}

ConditionalState photon_add(const DensityMatrix& rho) {
  const int d = rho.dim();
  const double top = rho.population(d - 1);
  if (!(top < kTailGuard)) {
    throw TruncationError("photon_add: top Fock level population " + std::to_string(top) +
                          " would be pushed out of dim " + std::to_string(d));
  }
  const CMatrix a = annihilation_matrix(rho.space());
  CMatrix out = a.adjoint() * rho.matrix() * a;
  const double weight = out.trace().real();
  // A^dag kills nothing but never reaches |0>.
  out.row(0).setZero();
  out.col(0).setZero();
  return {DensityMatrix::normalized(rho.space(), out), weight};
}

ConditionalState photon_subtract(const DensityMatrix& rho) {
  const double n = rho.mean_photon_number();
  if (!(n > 1e-12)) {
    throw VacuumSubtractionError("photon_subtract on a state with <n> = " + std::to_string(n));
  }
  const CMatrix a = annihilation_matrix(rho.space());
  CMatrix out = a * rho.matrix() * a.adjoint();
  const double weight = out.trace().real();
  return {DensityMatrix::normalized(rho.space(), out), weight};
}

DensityMatrix phase_diffusion(const DensityMatrix& rho, PhaseNoiseParam p) {
  const int d = rho.dim();
  const double s2 = p.sigma() * p.sigma();
  CMatrix out = rho.matrix();
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      if (m != n) out(m, n) *= std::exp(-0.5 * s2 * double(m - n) * double(m - n));
    }
  }
  return DensityMatrix::normalized(rho.space(), out);
}

HeraldResult spdc_herald(const DensityMatrix& rho_signal, SpdcGain gain) {
  const FockSpace& s = rho_signal.space();
  const int d = s.dim();
  const double top = rho_signal.population(d - 1);
  if (!(top < kTailGuard)) {
    throw TruncationError("spdc_herald: top Fock level population " + std::to_string(top) +
                          " would be pushed out of dim " + std::to_string(d));
  }
  // Idler needs only |0> and |1> at first order. Ordering: signal (x) idler.
  const FockSpace idler(2);
  const CMatrix as_dag = creation_matrix(s);
  const CMatrix ai_dag = creation_matrix(idler);
  const CMatrix id = CMatrix::Identity(2 * d, 2 * d);

  CMatrix pair(2 * d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pair.block(2 * i, 2 * j, 2, 2) = as_dag(i, j) * ai_dag;
  const CMatrix op = id + gain.g() * pair;

  CMatrix vac_i = CMatrix::Zero(2, 2);
  vac_i(0, 0) = 1.0;
  CMatrix joint(2 * d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) joint.block(2 * i, 2 * j, 2, 2) = rho_signal(i, j) * vac_i;

  const CMatrix out = op * joint * op.adjoint();
  const double total = out.trace().real();

  CMatrix heralded(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) heralded(i, j) = out(2 * i + 1, 2 * j + 1);
  const double p1 = heralded.trace().real();
  return {DensityMatrix::normalized(s, heralded), p1 / total};
}

}  // namespace pacat
