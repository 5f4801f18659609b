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

#include "pacat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pacat/parallel.hpp"

namespace pacat {

namespace {

// Eigenvalues below this are treated as rounding noise when forming square
// roots; otherwise each contributes ~sqrt(eps) to the nuclear norm.
constexpr double kEigenFloor = 1e-13;

CMatrix psd_sqrt(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  for (auto& l : lam) {
    if (l < kEigenFloor) l = 0.0;
  }
  const double total = lam.sum();
  if (total > 0.0) lam /= total;
  const Eigen::VectorXd root = lam.cwiseSqrt();
  return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double db(double variance) { return 10.0 * std::log10(variance / kVacuumVariance); }

double wrap_pi(double theta) {
  theta = std::fmod(theta, std::numbers::pi);
  if (theta < 0.0) theta += std::numbers::pi;
  return theta;
}

}  // namespace

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_mn|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_space(rho.space(), sigma.space());
  // sqrt(rho sigma rho)^{1/2} has the singular values of sqrt(rho) sqrt(sigma);
  // their sum avoids the square root of a rounding-level eigenvalue.
  const CMatrix prod = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
  Eigen::BDCSVD<CMatrix> svd(prod);
  const double nuclear = svd.singularValues().sum();
  return std::clamp(nuclear * nuclear, 0.0, 1.0);
}

double fidelity(const StateVector& psi, const DensityMatrix& rho) {
  require_same_space(psi.space(), rho.space());
  const double f = (psi.amps().adjoint() * rho.matrix() * psi.amps())(0).real();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const StateVector& psi, const StateVector& phi) {
  require_same_space(psi.space(), phi.space());
  return std::clamp(std::norm(psi.amps().dot(phi.amps())), 0.0, 1.0);
}

SqueezingReport squeezing_report(const DensityMatrix& rho, int n_theta) {
  if (n_theta < 4) throw ValidationError("squeezing_report needs n_theta >= 4");
  const Complex m1 = rho.mean_a();
  const Complex m2 = rho.mean_a2();
  const double n = rho.mean_photon_number();
  auto variance = [&](double theta) {
    const Complex ph = std::polar(1.0, -theta);
    const double mean = std::numbers::sqrt2 * (ph * m1).real();
    const double second = (ph * ph * m2).real() + n + 0.5;
    return second - mean * mean;
  };

  // Least squares for V(theta) = a + b cos 2theta + c sin 2theta; exact
  // because the model is.
  Eigen::MatrixXd design(n_theta, 3);
  Eigen::VectorXd v(n_theta);
  for (int k = 0; k < n_theta; ++k) {
    const double theta = std::numbers::pi * k / n_theta;
    design(k, 0) = 1.0;
    design(k, 1) = std::cos(2.0 * theta);
    design(k, 2) = std::sin(2.0 * theta);
    v(k) = variance(theta);
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(v);
  const double amp = std::hypot(coef(1), coef(2));
  const double v_min = coef(0) - amp;
  const double v_max = coef(0) + amp;
  const double theta_min = wrap_pi(0.5 * (std::atan2(coef(2), coef(1)) + std::numbers::pi));
  return {db(v_min), db(v_max), theta_min};
}

CVector cat_minus_amplitudes(const FockSpace& space, Complex alpha) {
  const int d = space.dim();
  CVector amps = CVector::Zero(d);
  Complex c = alpha;
  for (int n = 1; n < d; n += 2) {
    if (n > 1) c *= alpha * alpha / std::sqrt(double(n - 1) * n);
    amps(n) = c;
  }
  const double norm = amps.norm();
  if (!(norm > 0.0)) throw DegenerateCatError("cat amplitude underflow");
  return amps / norm;
}

CatFitResult cat_fit(const DensityMatrix& rho, double alpha_max) {
  if (!(alpha_max > kCatAlphaMin)) {
    throw ValidationError("cat_fit needs alpha_max > " + std::to_string(kCatAlphaMin));
  }
  const FockSpace& space = rho.space();
  const CMatrix& m = rho.matrix();
  auto score = [&](double mag, double theta) {
    const CVector v = cat_minus_amplitudes(space, std::polar(mag, theta));
    return (v.adjoint() * m * v)(0).real();
  };

  constexpr int kMagPoints = 50;
  constexpr int kPhasePoints = 16;
  const double mag_step = (alpha_max - kCatAlphaMin) / (kMagPoints - 1);
  const double phase_step = std::numbers::pi / kPhasePoints;
  std::vector<double> coarse(kMagPoints * kPhasePoints);
  parallel_for(coarse.size(), [&](std::size_t i) {
    const int im = int(i) / kPhasePoints;
    const int it = int(i) % kPhasePoints;
    coarse[i] = score(kCatAlphaMin + im * mag_step, it * phase_step);
  });
  const auto best_it = std::max_element(coarse.begin(), coarse.end());
  const int best_i = int(best_it - coarse.begin());
  double mag = kCatAlphaMin + (best_i / kPhasePoints) * mag_step;
  double theta = (best_i % kPhasePoints) * phase_step;
  double best = *best_it;

  // Compass search; phase steps shrink with the magnitude steps.
  double dm = mag_step;
  double dt = phase_step;
  int iterations = 0;
  while (dm > 1e-6 && iterations < 10000) {
    ++iterations;
    bool moved = false;
    const double cand[4][2] = {{mag + dm, theta}, {mag - dm, theta}, {mag, theta + dt},
                               {mag, theta - dt}};
    for (const auto& c : cand) {
      const double cm = std::clamp(c[0], kCatAlphaMin, alpha_max);
      const double ct = wrap_pi(c[1]);
      const double s = score(cm, ct);
      if (s > best) {
        best = s;
        mag = cm;
        theta = ct;
        moved = true;
      }
    }
    if (!moved) {
      dm *= 0.5;
      dt *= 0.5;
    }
  }
  return {std::polar(mag, theta), std::clamp(best, 0.0, 1.0), iterations};
}

double g2_zero(const DensityMatrix& rho) {
  double n1 = 0.0, n2 = 0.0;
  for (int k = 0; k < rho.dim(); ++k) {
    const double p = rho.population(k);
    n1 += k * p;
    n2 += double(k) * k * p;
  }
  if (!(n1 > 1e-12)) throw VacuumError("g2_zero undefined for <n> = " + std::to_string(n1));
  return (n2 - n1) / (n1 * n1);
}

double legendre_p(int l, double t) {
  if (l == 0) return 1.0;
  double p0 = 1.0, p1 = t;
  for (int k = 1; k < l; ++k) {
    const double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

LegendreCheck legendre_norm_check(double xi_mag, int m, int dim) {
  if (!(xi_mag >= 0.0 && xi_mag < 1.0)) {
    throw ValidationError("legendre_norm_check needs 0 <= |xi| < 1");
  }
  if (m != 1 && m != 2) throw ValidationError("legendre_norm_check supports m in {1, 2}");
  const double s = 1.0 - xi_mag * xi_mag;
  double m_fact = 1.0;
  for (int k = 2; k <= m; ++k) m_fact *= k;
  const double formula = m_fact * std::pow(s, -0.5 * m) * legendre_p(m, 1.0 / std::sqrt(s));

  const FockSpace space(dim);
  const StateVector xi = squeezed_vacuum(space, std::atanh(xi_mag), 0.0);
  const CMatrix a_dag = creation_matrix(space);
  CVector v = xi.amps();
  for (int k = 0; k < m; ++k) v = a_dag * v;
  return {formula, v.squaredNorm()};
}

}  // namespace pacat
